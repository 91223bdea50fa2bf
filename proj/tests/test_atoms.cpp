#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dw/atoms.hpp"

using namespace dw;

TEST_CASE("sort parse and print round trip") {
	for (const char* t :
	     {"A", "unit(eps)", "A*A", "A+unit(eps)+unit(down)",
	      "(A+unit(sep))*A", "list(A)", "list(A+unit(sep))",
	      "unit(0)+unit(1)+unit(2)", "A*(A*A)"}) {
		SortP s = parse_sort(t);
		CHECK(same_sort(parse_sort(show_sort(s)), s));
	}
	CHECK(show_sort(parse_sort("A+unit(eps)+unit(down)")) ==
	      "(A+unit(eps))+unit(down)");
	CHECK_THROWS_AS(parse_sort("A+"), Error);
	CHECK_THROWS_AS(parse_sort("foo"), Error);
}

TEST_CASE("value parse and print round trip") {
	for (const char* t : {"#0", "#17", "eps", "(#1,#2)", "L:#3", "R:L:eps",
	                      "[#1,#2,#1]", "[]", "(L:#1,R:sep)", "[(#1,x),(#2,y)]"}) {
		Value v = parse_value(t);
		CHECK(parse_value(show_value(v)) == v);
	}
	CHECK(parse_value(" ( #1 , #2 ) ") == vp(va(1), va(2)));
	CHECK_THROWS_AS(parse_value("(#1,)"), Error);
	CHECK_THROWS_AS(parse_value("#x"), Error);
}

TEST_CASE("typechecking") {
	SortP s = parse_sort("A+unit(eps)+unit(down)");
	CHECK(typechecks(parse_value("L:L:#5"), s));
	CHECK(typechecks(parse_value("L:R:eps"), s));
	CHECK(typechecks(parse_value("R:down"), s));
	CHECK_FALSE(typechecks(parse_value("#5"), s));
	CHECK_FALSE(typechecks(parse_value("L:R:down"), s));
	CHECK(typechecks(parse_value("[#1,#2]"), parse_sort("list(A)")));
	CHECK_FALSE(typechecks(parse_value("[#1,eps]"), parse_sort("list(A)")));
}

TEST_CASE("coercion lifts bare letters into sums") {
	SortP s = parse_sort("A+unit(eps)+unit(down)");
	CHECK(*coerce(parse_value("#4"), s) == parse_value("L:L:#4"));
	CHECK(*coerce(parse_value("eps"), s) == parse_value("L:R:eps"));
	CHECK(*coerce(parse_value("down"), s) == parse_value("R:down"));
	CHECK_FALSE(coerce(parse_value("sep"), s).has_value());
	SortP p = parse_sort("(unit(0)+unit(1))*A");
	CHECK(*coerce(parse_value("(1,#9)"), p) == parse_value("(R:1,#9)"));
	CHECK(flatten(parse_value("R:L:eps")) == vu("eps"));
	CHECK(flatten(parse_value("(L:#1,R:sep)")) == vp(va(1), vu("sep")));
}

TEST_CASE("least support keeps first occurrence order") {
	Value v = parse_value("((#7,#3),(#7,#1))");
	CHECK(least_support(v) == std::vector<Atom>{7, 3, 1});
	Word w = parse_word("#2,#2,#5,#2");
	CHECK(least_support(w) == std::vector<Atom>{2, 5});
	CHECK(least_support(parse_value("eps")).empty());
}

TEST_CASE("permutations") {
	Perm t = Perm::transposition(1, 2);
	CHECK(t(1) == 2);
	CHECK(t(2) == 1);
	CHECK(t(3) == 3);
	CHECK(apply_perm(t, parse_value("(#1,(#2,#3))")) ==
	      parse_value("(#2,(#1,#3))"));
	Perm c = Perm::of_pairs({{1, 2}, {2, 3}, {3, 1}});
	CHECK(c(3) == 1);
	CHECK(c.inverse()(1) == 3);
	CHECK(c.then(c.inverse())(2) == 2);
	CHECK_THROWS_AS(Perm::of_pairs({{1, 2}}), Error);
	CHECK_THROWS_AS(Perm::of_pairs({{1, 2}, {1, 3}, {2, 1}, {3, 1}}), Error);
}

TEST_CASE("equality types separate orbits") {
	CHECK(equality_type(parse_value("(#4,#4)")) ==
	      equality_type(parse_value("(#9,#9)")));
	CHECK_FALSE(equality_type(parse_value("(#4,#4)")) ==
	            equality_type(parse_value("(#4,#9)")));
	CHECK(canonical_form(parse_value("(#7,(#3,#7))")) ==
	      parse_value("(#0,(#1,#0))"));
	CHECK(canonical_form(parse_word("#5,#2,#5,#9")) ==
	      parse_word("#0,#1,#0,#2"));
}

TEST_CASE("orbit counts match Bell numbers") {
	CHECK(orbit_reps(parse_sort("A")).size() == 1);
	CHECK(orbit_reps(parse_sort("A*A")).size() == 2);
	CHECK(orbit_reps(parse_sort("A*A*A")).size() == 5);
	CHECK(orbit_reps(parse_sort("A+unit(eps)")).size() == 2);
	CHECK(orbit_reps(parse_sort("(A*A)+unit(x)")).size() == 3);
	// every rep is canonical and reps are pairwise distinct
	auto reps = orbit_reps(parse_sort("A*(A+unit(u))"));
	for (auto& r : reps) CHECK(canonical_form(r) == r);
	for (size_t i = 0; i < reps.size(); i++)
		for (size_t j = i + 1; j < reps.size(); j++)
			CHECK_FALSE(reps[i] == reps[j]);
}

TEST_CASE("canonical words") {
	CHECK(canonical_words(parse_sort("A"), 2).size() == 2);
	CHECK(canonical_words(parse_sort("A"), 3).size() == 5);
	CHECK(canonical_words(parse_sort("unit(a)+unit(b)"), 2).size() == 4);
	CHECK(canonical_words(parse_sort("A"), 0).size() == 1);
	auto ws = canonical_words(parse_sort("A+unit(sep)"), 3);
	for (auto& w : ws) CHECK(canonical_form(w) == w);
	for (size_t i = 0; i < ws.size(); i++)
		for (size_t j = i + 1; j < ws.size(); j++)
			CHECK_FALSE(ws[i] == ws[j]);
}

TEST_CASE("pattern functions") {
	SortP aa = parse_sort("A*A");
	SortP out = parse_sort("A+unit(no)");
	// first projection when equal, `no` otherwise
	PatternFn f = PatternFn::make(
	    aa, out,
	    {{parse_value("(#0,#0)"), parse_value("L:#0")},
	     {parse_value("(#0,#1)"), parse_value("R:no")}});
	CHECK(f(parse_value("(#7,#7)")) == parse_value("L:#7"));
	CHECK(f(parse_value("(#7,#8)")) == parse_value("R:no"));
	CHECK_THROWS_AS(f(parse_value("#7")), Error);

	// missing case rejected unless a default is supplied
	CHECK_THROWS_AS(PatternFn::make(
	                    aa, out,
	                    {{parse_value("(#0,#0)"), parse_value("L:#0")}}),
	                Error);
	PatternFn g = PatternFn::make(
	    aa, out, {{parse_value("(#0,#1)"), parse_value("L:#1")}},
	    parse_value("R:no"));
	CHECK(g(parse_value("(#3,#3)")) == parse_value("R:no"));
	CHECK(g(parse_value("(#3,#4)")) == parse_value("L:#4"));

	// non-canonical guards and out-of-range slots rejected
	CHECK_THROWS_AS(PatternFn::make(
	                    aa, out,
	                    {{parse_value("(#1,#0)"), parse_value("R:no")},
	                     {parse_value("(#0,#0)"), parse_value("R:no")}}),
	                Error);
	CHECK_THROWS_AS(PatternFn::make(
	                    aa, out,
	                    {{parse_value("(#0,#0)"), parse_value("L:#1")},
	                     {parse_value("(#0,#1)"), parse_value("R:no")}}),
	                Error);
}

TEST_CASE("pattern functions are equivariant") {
	SortP aa = parse_sort("A*A");
	SortP out = parse_sort("A+unit(no)");
	PatternFn f = PatternFn::make(
	    aa, out,
	    {{parse_value("(#0,#0)"), parse_value("L:#0")},
	     {parse_value("(#0,#1)"), parse_value("L:#1")}});
	auto rep = check_equivariance([&](const Value& v) { return f(v); }, aa,
	                              500, 42);
	CHECK(rep.ok);
	// a non-equivariant function is caught
	auto bad = check_equivariance(
	    [](const Value& v) {
		    return v.kids[0].atom == 3 ? parse_value("L:#3")
		                               : parse_value("R:no");
	    },
	    aa, 500, 42);
	CHECK_FALSE(bad.ok);
}

TEST_CASE("stay bound style dimension arithmetic") {
	CHECK(atom_dim(parse_sort("A")) == 1);
	CHECK(atom_dim(parse_sort("A*A")) == 2);
	CHECK(atom_dim(parse_sort("A+unit(eps)+unit(down)")) == 1);
	CHECK(atom_dim(parse_sort("unit(a)+unit(b)")) == 0);
	CHECK_THROWS_AS(atom_dim(parse_sort("list(A)")), Error);
}

TEST_CASE("random sampling stays inside the sort") {
	std::mt19937_64 rng(7);
	SortP s = parse_sort("(A+unit(sep))*A");
	for (int i = 0; i < 200; i++)
		CHECK(typechecks(random_value(s, {1, 2, 3}, rng), s));
}
