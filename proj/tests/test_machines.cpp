#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dw/fixtures.hpp"
#include "dw/machines.hpp"

using namespace dw;

static Word in(const TwoWaySUT& m, const std::string& s) {
	return parse_word_for_sort(s, m.input_sort);
}

TEST_CASE("fixtures validate cleanly") {
	for (auto m : {atom_propagation_mealy(), first_letter_multiuse(),
	               three_letters_automaton(), map_reverse_2way(),
	               first_last_automaton()}) {
		auto v = validate(m);
		CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v.front()));
	}
}

TEST_CASE("validate catches kind and register violations") {
	MealySUT m = atom_propagation_mealy();
	Action bad;
	bad.tag = Action::MoveLeft;
	m.delta["u"].yes.action = bad;
	auto v = validate(m);
	CHECK(!v.empty());

	TwoWaySUT fl = first_letter_multiuse();
	fl.delta["q4"].question.r2 = "x";  // RegEq(x,x)
	CHECK(!validate(fl).empty());
}

TEST_CASE("atom propagation forwards the latest atom to the next down") {
	MealySUT m = atom_propagation_mealy();
	Word w = in(m, "#1,#2,eps,eps,down,down,#3,eps,eps,down,eps,down");
	RunResult r = run(m, w);
	REQUIRE(r.tag == RunResult::Accepted);
	CHECK(show_word_for_sort(r.output, m.output_sort) ==
	      "bot,bot,bot,bot,#2,bot,bot,bot,bot,#3,bot,bot");
	CHECK(r.output.size() == w.size());

	// empty word accepts immediately
	RunResult e = run(m, {});
	CHECK(e.tag == RunResult::Accepted);
	CHECK(e.output.empty());

	// a down with no stored atom yields bot and stays undefined
	RunResult d = run(m, in(m, "down,#4,down,down"));
	REQUIRE(d.tag == RunResult::Accepted);
	CHECK(show_word_for_sort(d.output, m.output_sort) == "bot,bot,#4,bot");
}

TEST_CASE("first letter appears again (multiple use)") {
	TwoWaySUT m = first_letter_multiuse();
	CHECK(accepts(m, in(m, "#1,#2,#1")));
	CHECK(accepts(m, in(m, "#1,#1")));
	CHECK_FALSE(accepts(m, in(m, "#1,#2,#3")));
	CHECK_FALSE(accepts(m, in(m, "#1")));
	CHECK_FALSE(accepts(m, in(m, "")));
	// the same machine under single-use semantics loses the stored letter
	TwoWaySUT su = m;
	su.single_use = true;
	CHECK_FALSE(accepts(su, in(m, "#1,#2,#1")));
}

TEST_CASE("at most three distinct letters") {
	TwoWaySUT m = three_letters_automaton();
	CHECK(accepts(m, in(m, "")));
	CHECK(accepts(m, in(m, "#1,#2,#1,#3")));
	CHECK_FALSE(accepts(m, in(m, "#1,#2,#3,#4")));
	CHECK(accepts(m, in(m, "#1,#1,#1,#1,#1")));

	// brute force over all canonical words up to length 6
	for (int len = 0; len <= 6; len++)
		for (const Word& w : canonical_words(atom_sort(), len)) {
			std::set<Atom> distinct;
			for (auto& l : w) distinct.insert(l.atom);
			CHECK(accepts(m, w) == (distinct.size() <= 3));
		}

	// longer random words exercising the copy-refresh logic
	std::mt19937_64 rng(11);
	for (int i = 0; i < 300; i++) {
		Word w = random_word(atom_sort(), 1 + (int)(rng() % 14),
		                     {1, 2, 3, 4, 5}, rng);
		std::set<Atom> distinct;
		for (auto& l : w) distinct.insert(l.atom);
		CHECK(accepts(m, w) == (distinct.size() <= 3));
	}
}

TEST_CASE("two-way map reverse") {
	TwoWaySUT m = map_reverse_2way();
	RunResult r = run(m, in(m, "#1,#2,sep,sep,#3,#4,#5,sep,#6,#7,#8,sep,#9"));
	REQUIRE(r.tag == RunResult::Accepted);
	CHECK(show_word_for_sort(r.output, m.output_sort) ==
	      "#2,#1,sep,sep,#5,#4,#3,sep,#8,#7,#6,sep,#9");
	CHECK(run(m, {}).tag == RunResult::Accepted);
	CHECK(run(m, {}).output.empty());
	RunResult s = run(m, in(m, "sep,sep"));
	REQUIRE(s.tag == RunResult::Accepted);
	CHECK(show_word_for_sort(s.output, m.output_sort) == "sep,sep");
}

TEST_CASE("first equals last") {
	TwoWaySUT m = first_last_automaton();
	CHECK(accepts(m, in(m, "#1,#2,#1")));
	CHECK(accepts(m, in(m, "#5")));
	CHECK_FALSE(accepts(m, in(m, "#1,#2")));
	CHECK_FALSE(accepts(m, in(m, "")));
}

TEST_CASE("single-use semantics resets registers on every read") {
	for (auto m : {map_reverse_2way(), first_last_automaton(),
	               three_letters_automaton()}) {
		std::mt19937_64 rng(3);
		for (int i = 0; i < 40; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 8),
			                     {1, 2, 3, 4}, rng);
			std::vector<TraceStep> trace;
			run(m, w, &trace);
			for (auto& s : trace) {
				if (s.question == Question::RegEq)
					for (auto& r : s.question_regs)
						CHECK_FALSE(s.val_after_question.at(r).has_value());
				if (s.action == Action::Output ||
				    s.action == Action::OutputMove)
					for (auto& r : s.action_regs)
						CHECK_FALSE(s.val_after.at(r).has_value());
			}
		}
	}
}

TEST_CASE("single-use audit") {
	TwoWaySUT fl = first_letter_multiuse();
	RunResult a = audit_single_use(fl, in(fl, "#1,#2,#1"));
	CHECK(a.tag == RunResult::SingleUseViolation);
	CHECK(a.violation_step >= 0);
	// the first comparison is fine; only the second rereads the register
	CHECK(audit_single_use(fl, in(fl, "#1,#1")).tag == RunResult::Accepted);

	for (auto m : {map_reverse_2way(), first_last_automaton(),
	               three_letters_automaton()}) {
		std::mt19937_64 rng(5);
		for (int i = 0; i < 30; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 8),
			                     {1, 2, 3}, rng);
			CHECK(audit_single_use(m, w).tag != RunResult::SingleUseViolation);
		}
	}
}

TEST_CASE("loop detection") {
	TwoWaySUT m;
	m.kind = Kind::Automaton2W;
	m.input_sort = atom_sort();
	m.output_sort = unit_sort("nil");
	m.states = {"p", "q"};
	m.initial = "p";
	SortP ext = m.ext_letter_sort();
	PatternFn t = letter_pred(ext, {});
	Action right, left;
	right.tag = Action::MoveRight;
	left.tag = Action::MoveLeft;
	m.delta["p"] = {{Question::LetterPred, t, "", ""},
	                {"q", right},
	                {"q", right}};
	m.delta["q"] = {{Question::LetterPred, t, "", ""},
	                {"p", left},
	                {"p", left}};
	CHECK(validate(m).empty());
	CHECK(run(m, parse_word("#1,#2")).tag == RunResult::Loop);
}

TEST_CASE("stay bound formula") {
	TwoWaySUT m;
	m.input_sort = atom_sort();
	m.states = {"1", "2", "3"};
	m.registers = {"r"};
	CHECK(stay_bound(m) == 9);
	m.states = {"1"};
	m.registers = {};
	CHECK(stay_bound(m) == 1);
	m.states = {"1", "2"};
	m.registers = {"r", "s"};
	m.input_sort = parse_sort("A*A");
	CHECK(stay_bound(m) == 32);
}

TEST_CASE("run graphs") {
	// one-way machines have width-1 graphs
	MealySUT ap = atom_propagation_mealy();
	Word w = parse_word_for_sort("#1,down,eps,#2,down", ap.input_sort);
	RunGraph g = run_graph(ap, w);
	// vertices are configurations, so stay steps add rows; a one-way
	// machine's width is still bounded by its stay bound
	CHECK(g.width() <= stay_bound(ap));
	CHECK(g.width() <= 3);
	for (auto& col : g.columns)
		for (size_t r = 0; r + 1 < col.size(); r++)
			CHECK(col[r].next);  // single path, no revisits after leaving
	CHECK(g.replay() == run(ap, w).output);

	TwoWaySUT mr = map_reverse_2way();
	Word w2 = parse_word_for_sort("#1,#2,sep,sep,#3,#4,#5,sep,#9",
	                              mr.input_sort);
	RunGraph g2 = run_graph(mr, w2);
	CHECK(g2.width() <= 6);
	Word out = run(mr, w2).output;
	CHECK(g2.replay() == out);
	// serialization round trip preserves the replayed output
	CHECK(RunGraph::of_word(g2.as_word()).replay() == out);

	TwoWaySUT fl = first_letter_multiuse();
	CHECK_THROWS_AS(run_graph(fl, parse_word("#1,#2")), Error);
}

TEST_CASE("machine JSON round trip") {
	for (auto m : {atom_propagation_mealy(), first_letter_multiuse(),
	               map_reverse_2way(), first_last_automaton(),
	               three_letters_automaton()}) {
		nlohmann::json j = machine_to_json(m);
		TwoWaySUT back = machine_from_json(j);
		CHECK(machine_to_json(back) == j);
		CHECK(validate(back).empty());
		// behavior preserved
		std::mt19937_64 rng(9);
		for (int i = 0; i < 10; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 6), {1, 2, 3},
			                     rng);
			RunResult a = run(m, w), b = run(back, w);
			CHECK(a.tag == b.tag);
			CHECK(a.output == b.output);
		}
	}
}

TEST_CASE("runs are equivariant") {
	for (auto m : {atom_propagation_mealy(), map_reverse_2way()}) {
		auto rep = check_equivariance_word(
		    [&](const Word& w) { return run(m, w).output; }, m.input_sort,
		    300, 10, 77);
		CHECK_MESSAGE(rep.ok, rep.detail);
	}
	for (auto m : {three_letters_automaton(), first_last_automaton(),
	               first_letter_multiuse()}) {
		std::mt19937_64 rng(13);
		for (int i = 0; i < 200; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 8),
			                     {1, 2, 3, 4}, rng);
			Perm p = random_perm(least_support(w), rng);
			CHECK(accepts(m, w) == accepts(m, apply_perm(p, w)));
		}
	}
}
