#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dw/reglist.hpp"
#include "dw/sst.hpp"

using namespace dw;

static Value wlist(const std::string& s, const SortP& letter) {
	return vl(parse_word_for_sort(s, letter));
}

TEST_CASE("typechecker infers the examples") {
	SortP a = atom_sort();
	auto [d1, c1] = typecheck(rlf_comp(rlf_concat(a), rlf_map(rlf_reverse(a))));
	CHECK(same_sort(d1, list_sort(list_sort(a))));
	CHECK(same_sort(c1, list_sort(a)));

	auto [d2, c2] = typecheck(rlf_cases(rlf_reverse(a), rlf_concat(a)));
	CHECK(same_sort(d2, sum_sort(list_sort(a), list_sort(list_sort(a)))));
	CHECK(same_sort(c2, list_sort(a)));

	auto [d3, c3] = typecheck(
	    rlf_pair(rlf_project(0, a, a), rlf_project(0, a, a)));
	CHECK(same_sort(d3, prod_sort(a, a)));
	CHECK(same_sort(c3, prod_sort(a, a)));
}

TEST_CASE("type errors carry the offending path") {
	SortP a = atom_sort();
	try {
		typecheck(rlf_map(rlf_comp(rlf_eq(), rlf_reverse(a))));
		FAIL("expected a type error");
	} catch (const Error& e) {
		CHECK(e.kind == "TypeError");
		CHECK(std::string(e.what()).find("/map:0/comp") != std::string::npos);
	}
	CHECK_THROWS_AS(rlf_const(a, a, va(3)), Error);  // atoms in a constant
	CHECK_THROWS_AS(
	    typecheck(rlf_pair(rlf_reverse(a), rlf_reverse(unit_sort("x")))),
	    Error);
}

TEST_CASE("prime semantics goldens") {
	SortP a = atom_sort();

	// eq
	CHECK(eval_rlf(rlf_eq(), vp(va(3), va(3))) == answer(true));
	CHECK(eval_rlf(rlf_eq(), vp(va(3), va(4))) == answer(false));

	// coappend
	RlfP ca = rlf_coappend(a);
	CHECK(eval_rlf(ca, vl({})) == vin(1, vu("bot")));
	CHECK(eval_rlf(ca, vl({va(1), va(2)})) ==
	      vin(0, vp(va(1), vl({va(2)}))));

	// append undoes it
	CHECK(eval_rlf(rlf_append(a), vp(va(1), vl({va(2)}))) ==
	      vl({va(1), va(2)}));

	// distr
	SortP u = unit_sort("u");
	CHECK(eval_rlf(rlf_distr(a, u, a), vp(vin(1, vu("u")), va(7))) ==
	      vin(1, vp(vu("u"), va(7))));

	// group prefix products over Z3
	Group z3 = Group::cyclic(3);
	RlfP g = rlf_group(z3, a);
	Value in = vl({vp(z3.letter(1), va(10)), vp(z3.letter(2), va(11)),
	               vp(z3.letter(0), va(12))});
	Value out = vl({vp(z3.letter(0), va(10)), vp(z3.letter(1), va(11)),
	                vp(z3.letter(0), va(12))});
	CHECK(eval_rlf(g, in) == out);
}

TEST_CASE("block groups maximal runs of one side") {
	SortP sigma = parse_sort("A+unit(eps)"), tau = unit_sort("down");
	SortP letter = sum_sort(sigma, tau);
	Value in = wlist("#1,#2,eps,eps,down,down,#3,eps,eps,down,eps,down",
	                 letter);
	Value got = eval_rlf(rlf_block(sigma, tau), in);
	auto sblock = [&](const std::string& s) {
		return vin(0, vl(parse_word_for_sort(s, sigma)));
	};
	auto tblock = [&](int n) {
		return vin(1, vl(std::vector<Value>(n, vu("down"))));
	};
	CHECK(got == vl({sblock("#1,#2,eps,eps"), tblock(2), sblock("#3,eps,eps"),
	                 tblock(1), sblock("eps"), tblock(1)}));

	// concatenating the blocks reproduces the input, and sides alternate
	std::mt19937_64 rng(5);
	for (int i = 0; i < 60; i++) {
		Word w = random_word(letter, (int)(rng() % 12), {1, 2, 3}, rng);
		Value blocks = eval_rlf(rlf_block(sigma, tau), vl(w));
		Word flat;
		int prev = -1;
		for (const Value& b : blocks.kids) {
			CHECK(b.side != prev);
			CHECK(!b.kids[0].kids.empty());
			prev = b.side;
			for (const Value& el : b.kids[0].kids)
				flat.push_back(vin(b.side, el));
		}
		CHECK(flat == w);
	}
}

TEST_CASE("map reverse and map duplicate are derivable") {
	SortP a = atom_sort(), sep = unit_sort("sep");
	SortP letter = sum_sort(a, sep);
	RlfP mr = rlf_map_reverse(a, sep), md = rlf_map_duplicate(a, sep);
	CHECK(eval_rlf(mr, wlist("#1,#2,sep,sep,#3,#4,#5,sep,#6,#7,#8,sep,#9",
	                         letter)) ==
	      wlist("#2,#1,sep,sep,#5,#4,#3,sep,#8,#7,#6,sep,#9", letter));
	CHECK(eval_rlf(mr, vl({})) == vl({}));
	CHECK(eval_rlf(md, wlist("#1,#2,sep", letter)) ==
	      wlist("#1,#2,#1,#2,sep", letter));
	CHECK(eval_rlf(md, wlist("sep,sep,#3", letter)) ==
	      wlist("sep,sep,#3,#3", letter));
}

TEST_CASE("duplicate and windows goldens") {
	SortP a = atom_sort();
	CHECK(eval_rlf(rlf_duplicate(a), vl({va(1), va(2)})) ==
	      vl({va(1), va(2), va(1), va(2)}));
	CHECK(eval_rlf(rlf_duplicate(a), vl({})) == vl({}));

	RlfP w = rlf_windows(a);
	CHECK(eval_rlf(w, vl({va(1), va(2), va(3)})) ==
	      vl({vp(va(1), va(2)), vp(va(2), va(3))}));
	CHECK(eval_rlf(w, vl({})) == vl({}));
	CHECK(eval_rlf(w, vl({va(5)})) == vl({}));

	std::mt19937_64 rng(9);
	for (int i = 0; i < 40; i++) {
		Word x = random_word(a, (int)(rng() % 10), {1, 2, 3, 4}, rng);
		Value got = eval_rlf(w, vl(x));
		std::vector<Value> want;
		for (size_t j = 0; j + 1 < x.size(); j++)
			want.push_back(vp(x[j], x[j + 1]));
		CHECK(got == vl(want));
	}
}

TEST_CASE("filter and conditional") {
	SortP a = atom_sort(), aa = prod_sort(a, a);
	RlfP f = rlf_filter(rlf_eq());
	CHECK(eval_rlf(f, vl({vp(va(1), va(1)), vp(va(1), va(2)),
	                      vp(va(3), va(3))})) ==
	      vl({vp(va(1), va(1)), vp(va(3), va(3))}));

	// keep the first atom as a singleton when the pair is equal
	RlfP c = rlf_conditional(
	    rlf_eq(), rlf_comp(rlf_singleton(a), rlf_project(0, a, a)),
	    rlf_const(aa, list_sort(a), vl({})));
	CHECK(eval_rlf(c, vp(va(4), va(4))) == vl({va(4)}));
	CHECK(eval_rlf(c, vp(va(4), va(5))) == vl({}));
}

TEST_CASE("structural identities") {
	SortP a = atom_sort(), sep = unit_sort("sep");
	SortP letter = sum_sort(a, sep);
	std::mt19937_64 rng(13);
	RlfP rr = rlf_comp(rlf_reverse(letter), rlf_reverse(letter));
	RlfP cs = rlf_comp(rlf_concat(letter), rlf_map(rlf_singleton(letter)));
	for (int i = 0; i < 60; i++) {
		Value w = vl(random_word(letter, (int)(rng() % 10), {1, 2, 3}, rng));
		CHECK(eval_rlf(rr, w) == w);
		CHECK(eval_rlf(cs, w) == w);
	}
	// append then coappend round-trips
	for (int i = 0; i < 60; i++) {
		Value x = random_value(a, {1, 2, 3}, rng);
		Value l = vl(random_word(a, (int)(rng() % 6), {1, 2, 3}, rng));
		Value al = eval_rlf(rlf_append(a), vp(x, l));
		CHECK(eval_rlf(rlf_coappend(a), al) == vin(0, vp(x, l)));
	}
}

TEST_CASE("language acceptors") {
	SortP a = atom_sort();
	RlfP nonempty = rlf_comp(
	    rlf_cases(rlf_const(prod_sort(a, list_sort(a)), answer_sort(),
	                        answer(true)),
	              rlf_const(unit_sort("bot"), answer_sort(), answer(false))),
	    rlf_coappend(a));
	auto acc = as_language_acceptor(nonempty);
	CHECK_FALSE(acc({}));
	CHECK(acc({va(1)}));

	auto three = as_language_acceptor(three_distinct_letters_rlf());
	for (int len = 0; len <= 6; len++) {
		for (const Word& w : canonical_words(a, len)) {
			std::set<Value> letters(w.begin(), w.end());
			CHECK(three(w) == (letters.size() >= 3));
		}
	}

	// acceptors need a yes/no codomain over a word domain
	CHECK_THROWS_AS(as_language_acceptor(rlf_reverse(a)), Error);
	CHECK_THROWS_AS(as_language_acceptor(rlf_eq()), Error);
}

TEST_CASE("cross-model agreement on map reverse") {
	SortP a = atom_sort(), sep = unit_sort("sep");
	SortP letter = sum_sort(a, sep);
	RlfP e = rlf_map_reverse(a, sep);
	PrimeFn p = prime_map_reverse(a);
	SSTMachine m = map_reverse_sst();
	for (int len = 0; len <= 6; len++) {
		for (const Word& w : canonical_words(letter, len)) {
			Word want = eval_prime(p, w);
			CHECK(eval_rlf(e, vl(w)) == vl(want));
			RunResult r = eval_sst(m, w);
			REQUIRE(r.tag == RunResult::Accepted);
			CHECK(r.output == want);
		}
	}
}

TEST_CASE("evaluation is equivariant") {
	SortP a = atom_sort(), sep = unit_sort("sep");
	struct Case {
		RlfP e;
		SortP dom;
	};
	std::vector<Case> cases = {
	    {rlf_map_reverse(a, sep), list_sort(sum_sort(a, sep))},
	    {rlf_map_duplicate(a, sep), list_sort(sum_sort(a, sep))},
	    {rlf_windows(a), list_sort(a)},
	    {three_distinct_letters_rlf(), list_sort(a)},
	    {rlf_filter(rlf_eq()), list_sort(prod_sort(a, a))},
	};
	int seed = 29;
	for (auto& c : cases) {
		auto rep = check_equivariance(
		    [&](const Value& v) { return eval_rlf(c.e, v); }, c.dom, 150,
		    seed++);
		CHECK_MESSAGE(rep.ok, rep.detail);
	}
}

TEST_CASE("expression JSON round trips") {
	SortP a = atom_sort(), sep = unit_sort("sep");
	std::vector<RlfP> es = {
	    rlf_map_reverse(a, sep),
	    rlf_map_duplicate(a, sep),
	    rlf_windows(a),
	    three_distinct_letters_rlf(),
	    rlf_group(Group::cyclic(3), a),
	    rlf_const(a, list_sort(sep), vl({vu("sep"), vu("sep")})),
	};
	for (const RlfP& e : es) {
		nlohmann::json j = rlf_to_json(e);
		RlfP back = rlf_from_json(j);
		CHECK(rlf_to_json(back) == j);
		auto [dom, cod] = typecheck(e);
		auto [dom2, cod2] = typecheck(back);
		CHECK(same_sort(dom, dom2));
		CHECK(same_sort(cod, cod2));
		std::mt19937_64 rng(31);
		for (int i = 0; i < 10; i++) {
			Value v = random_value(dom, {1, 2, 3}, rng);
			CHECK(eval_rlf(e, v) == eval_rlf(back, v));
		}
	}
}

TEST_CASE("evaluation rejects ill-sorted inputs") {
	SortP a = atom_sort();
	CHECK_THROWS_AS(eval_rlf(rlf_reverse(a), va(1)), Error);
	CHECK_THROWS_AS(eval_rlf(rlf_eq(), vl({va(1)})), Error);
}
