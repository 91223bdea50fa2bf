#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dw/fixtures.hpp"
#include "dw/primes.hpp"

using namespace dw;

static Word pw(const PrimeFn& p, const std::string& s) {
	return parse_word_for_sort(s, p.dom());
}

static std::string out(const PrimeFn& p, const std::string& s) {
	return show_word_for_sort(eval_prime(p, pw(p, s)), p.cod());
}

TEST_CASE("group tables") {
	Group z3 = Group::cyclic(3);
	CHECK(z3.op(1, 2) == 0);
	CHECK(z3.inverse(2) == 1);
	CHECK_THROWS_AS(Group::of_table({{0, 1}, {1, 1}}), Error);
	CHECK_THROWS_AS(Group::of_table({{1, 0}, {0, 1}}), Error);
	CHECK_THROWS_AS(Group::of_table({}), Error);
}

TEST_CASE("group transducer prefix products") {
	PrimeFn p = prime_group(Group::cyclic(3));
	CHECK(out(p, "1,2,0,0,2,1,0,1,1,2,2") == "1,0,0,0,2,0,0,1,2,1,0");
	CHECK(out(p, "") == "");
}

TEST_CASE("flip flop latch") {
	PrimeFn p = prime_flipflop();
	CHECK(out(p, "1,1,b,1,1,b,1,1,a,b,b") == "a,a,a,b,b,b,b,b,b,a,b");
	CHECK(out(p, "b") == "a");
}

TEST_CASE("atom propagation prime matches the machine") {
	PrimeFn p = prime_atom_propagation();
	CHECK(out(p, "#1,#2,eps,eps,down,down,#3,eps,eps,down,eps,down") ==
	      "bot,bot,bot,bot,#2,bot,bot,bot,bot,#3,bot,bot");
	MealySUT m = atom_propagation_mealy();
	std::mt19937_64 rng(21);
	for (int i = 0; i < 100; i++) {
		Word w = random_word(p.dom(), (int)(rng() % 10), {1, 2, 3}, rng);
		CHECK(eval_prime(p, w) == run(m, w).output);
	}
}

TEST_CASE("map reverse and map duplicate") {
	PrimeFn rev = prime_map_reverse(atom_sort());
	CHECK(out(rev, "#1,#2,sep,sep,#3,#4,#5,sep,#6,#7,#8,sep,#9") ==
	      "#2,#1,sep,sep,#5,#4,#3,sep,#8,#7,#6,sep,#9");
	PrimeFn dup = prime_map_duplicate(atom_sort());
	CHECK(out(dup, "#1,#2,sep,sep,#3,#4,#5,sep,#9") ==
	      "#1,#2,#1,#2,sep,sep,#3,#4,#5,#3,#4,#5,sep,#9,#9");
	CHECK(out(rev, "") == "");
	CHECK(out(dup, "sep") == "sep");
}

TEST_CASE("homomorphisms and endmark") {
	PatternFn two = PatternFn::make(atom_sort(), list_sort(atom_sort()),
	                                {{va(0), vl({va(0), va(0)})}});
	PrimeFn h = prime_hom(two);
	CHECK(out(h, "#1,#2") == "#1,#1,#2,#2");
	CHECK_FALSE(h.length_preserving());

	PrimeFn lp = prime_lphom(identity_fn(atom_sort()));
	CHECK(out(lp, "#4,#4,#5") == "#4,#4,#5");

	PrimeFn e = prime_append_endmark(atom_sort());
	CHECK(out(e, "#1,#2") == "#1,#2,rend");
	CHECK(out(e, "") == "rend");
}

TEST_CASE("parallel with identity") {
	PrimeFn p = prime_par_with_id(prime_flipflop(), atom_sort());
	CHECK(out(p, "(1,#5),(b,#6),(1,#5)") == "(a,#5),(a,#6),(b,#5)");
	// the identity component must not change
	PrimeFn bad = prime_par_with_id(prime_append_endmark(atom_sort()),
	                                atom_sort());
	CHECK_THROWS_AS(eval_prime(bad, pw(bad, "(#1,#2)")), Error);
}

TEST_CASE("pipelines") {
	PrimeFn ff = prime_flipflop();
	PrimeFn gt = prime_group(Group::cyclic(2));
	Pipeline seq = pipe_seq({pipe_prime(gt), pipe_prime(gt)});
	Word w = parse_word_for_sort("1,0,1,1", gt.dom());
	// prefix sums of the prefix sums 1,1,0,1
	CHECK(show_word_for_sort(eval_pipeline(seq, w), seq.cod()) == "1,0,0,1");

	// (f1 | f2) agrees with (f1 | id) ; (id | f2)
	Pipeline both = pipe_par({pipe_prime(ff), pipe_prime(gt)});
	Pipeline staged = pipe_seq(
	    {pipe_prime(prime_par_with_id(ff, gt.dom())),
	     pipe_par({pipe_prime(prime_lphom(identity_fn(ff.cod()))),
	               pipe_prime(gt)})});
	REQUIRE(same_sort(both.dom(), staged.dom()));
	std::mt19937_64 rng(4);
	for (int i = 0; i < 60; i++) {
		Word v = random_word(both.dom(), (int)(rng() % 8), {1, 2}, rng);
		CHECK(eval_pipeline(both, v) == eval_pipeline(staged, v));
	}

	CHECK_THROWS_AS(pipe_seq({pipe_prime(ff), pipe_prime(gt)}), Error);
	CHECK_THROWS_AS(pipe_seq({}), Error);
}

TEST_CASE("prime and pipeline JSON round trips") {
	std::vector<PrimeFn> primes = {
	    prime_lphom(identity_fn(parse_sort("A+unit(sep)"))),
	    prime_hom(PatternFn::make(atom_sort(), list_sort(atom_sort()),
	                              {{va(0), vl({va(0), va(0)})}})),
	    prime_atom_propagation(),
	    prime_group(Group::cyclic(3)),
	    prime_flipflop(),
	    prime_map_reverse(atom_sort()),
	    prime_map_duplicate(atom_sort()),
	    prime_append_endmark(atom_sort()),
	    prime_par_with_id(prime_flipflop(), atom_sort()),
	};
	std::mt19937_64 rng(8);
	for (auto& p : primes) {
		nlohmann::json j = prime_to_json(p);
		PrimeFn back = prime_from_json(j);
		CHECK(prime_to_json(back) == j);
		for (int i = 0; i < 20; i++) {
			Word w = random_word(p.dom(), (int)(rng() % 6), {1, 2, 3}, rng);
			CHECK(eval_prime(p, w) == eval_prime(back, w));
		}
	}

	Pipeline pl = pipe_seq(
	    {pipe_par({pipe_prime(prime_flipflop()), pipe_prime(prime_flipflop())}),
	     pipe_prime(prime_lphom(identity_fn(
	         prod_sort(parse_sort("unit(a)+unit(b)"),
	                   parse_sort("unit(a)+unit(b)")))))});
	nlohmann::json j = pipeline_to_json(pl);
	Pipeline back = pipeline_from_json(j);
	CHECK(pipeline_to_json(back) == j);
}

TEST_CASE("prime evaluation is equivariant") {
	for (auto p : {prime_atom_propagation(), prime_map_reverse(atom_sort()),
	               prime_map_duplicate(atom_sort())}) {
		auto rep = check_equivariance_word(
		    [&](const Word& w) { return eval_prime(p, w); }, p.dom(), 300, 10,
		    31);
		CHECK_MESSAGE(rep.ok, rep.detail);
	}
}

// ------------------------------------------------------- Mealy compilation

static void check_same_as_prime(const PrimeFn& p, int words, int maxlen,
                                std::uint64_t seed) {
	MealySUT m = as_mealy(p);
	CHECK(validate(m).empty());
	CHECK(m.kind == Kind::Mealy);
	std::mt19937_64 rng(seed);
	for (int i = 0; i < words; i++) {
		Word w = random_word(p.dom(), (int)(rng() % (maxlen + 1)), {1, 2, 3},
		                     rng);
		RunResult r = run(m, w);
		REQUIRE(r.tag == RunResult::Accepted);
		CHECK(r.output == eval_prime(p, w));
		CHECK(audit_single_use(m, w).tag == RunResult::Accepted);
	}
}

TEST_CASE("length-preserving primes compile to Mealy machines") {
	check_same_as_prime(prime_atom_propagation(), 120, 10, 41);
	check_same_as_prime(prime_group(Group::cyclic(3)), 60, 10, 42);
	check_same_as_prime(prime_flipflop(), 60, 10, 43);
	check_same_as_prime(prime_lphom(identity_fn(parse_sort("A+unit(sep)"))),
	                    60, 8, 44);
	check_same_as_prime(
	    prime_par_with_id(prime_atom_propagation(), atom_sort()), 80, 8, 45);
	check_same_as_prime(
	    prime_classical_mealy(as_mealy(prime_group(Group::cyclic(2)))), 40, 8,
	    46);
	CHECK_THROWS_AS(as_mealy(prime_map_reverse(atom_sort())), Error);
	CHECK_THROWS_AS(as_mealy(prime_append_endmark(atom_sort())), Error);
}

static long long max_stay(const MealySUT& m, const Word& w) {
	std::vector<TraceStep> trace;
	run(m, w, &trace);
	long long best = 0, cur = 0;
	int pos = -1;
	for (auto& s : trace) {
		cur = s.pos == pos ? cur + 1 : 1;
		pos = s.pos;
		best = std::max(best, cur);
	}
	return best;
}

TEST_CASE("Mealy composition agrees with staged evaluation") {
	struct Pair {
		PrimeFn a, b;
	};
	std::vector<Pair> pairs = {
	    {prime_lphom(identity_fn(parse_sort("A+unit(eps)+unit(down)"))),
	     prime_atom_propagation()},
	    {prime_atom_propagation(),
	     prime_lphom(identity_fn(parse_sort("A+unit(bot)")))},
	    {prime_group(Group::cyclic(3)), prime_group(Group::cyclic(3))},
	};
	std::uint64_t seed = 51;
	for (auto& pr : pairs) {
		MealySUT mf = as_mealy(pr.a), mg = as_mealy(pr.b);
		MealySUT comp = compose_mealy(mf, mg);
		CHECK(validate(comp).empty());
		std::mt19937_64 rng(seed++);
		for (int len = 0; len <= 5; len++)
			for (const Word& w : canonical_words(pr.a.dom(), len)) {
				RunResult r = run(comp, w);
				REQUIRE(r.tag == RunResult::Accepted);
				CHECK(r.output == eval_prime(pr.b, eval_prime(pr.a, w)));
				CHECK(max_stay(comp, w) <= stay_bound(comp));
				CHECK(audit_single_use(comp, w).tag == RunResult::Accepted);
			}
		for (int i = 0; i < 20; i++) {
			Word w = random_word(pr.a.dom(), 3 + (int)(rng() % 6),
			                     {1, 2, 3, 4}, rng);
			RunResult r = run(comp, w);
			REQUIRE(r.tag == RunResult::Accepted);
			CHECK(r.output == eval_prime(pr.b, eval_prime(pr.a, w)));
		}
	}

	CHECK_THROWS_AS(
	    compose_mealy(as_mealy(prime_flipflop()),
	                  as_mealy(prime_atom_propagation())),
	    Error);
}
