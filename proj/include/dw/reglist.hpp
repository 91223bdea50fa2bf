#pragma once

// Regular list functions with atoms: prime combinators over datatypes
// (sorts extended with lists), the composition/pairing/cases/map
// combinators, a typechecker, an evaluator, and a derived library.

#include <functional>

#include "dw/primes.hpp"

namespace dw {

struct RlfExpr;
using RlfP = std::shared_ptr<const RlfExpr>;

// Every polymorphic prime is monomorphized at its use site by explicit
// sort annotations (s0/s1/s2); there is no inference across nodes.
struct RlfExpr {
	enum Tag {
		Const,      // atomless constant: s0 -> s1, value of sort s1
		Eq,         // A*A -> unit(yes)+unit(no)
		Id,         // s0 -> s0
		Project,    // s0*s1 -> s{index}
		Coproject,  // s{index} -> s0+s1
		Distr,      // (s0+s1)*s2 -> s0*s2 + s1*s2
		Reverse,    // list(s0) -> list(s0)
		Concat,     // list(list(s0)) -> list(s0)
		Append,     // s0*list(s0) -> list(s0)
		Coappend,   // list(s0) -> s0*list(s0) + unit(bot)
		Block,      // list(s0+s1) -> list(list(s0)+list(s1))
		GroupPfx,   // list(G*s0) -> list(G*s0), prefix products
		Comp,       // kids {f,g}: x -> f(g(x))
		Pair,       // kids {f,g}: x -> (f(x),g(x))
		Cases,      // kids {f,g}: (i,x) -> kid_i(x)
		Map,        // kid {f}: elementwise
	} tag = Id;

	int index = 0;            // Project/Coproject
	Value value;              // Const
	SortP s0, s1, s2;         // sort annotations
	Group group;              // GroupPfx
	std::vector<RlfP> kids;   // Comp/Pair/Cases: 2, Map: 1
};

RlfP rlf_const(SortP dom, SortP cod, Value v);  // v must be atomless
RlfP rlf_eq();
RlfP rlf_id(SortP s);
RlfP rlf_project(int i, SortP s0, SortP s1);
RlfP rlf_coproject(int i, SortP s0, SortP s1);
RlfP rlf_distr(SortP s0, SortP s1, SortP t);
RlfP rlf_reverse(SortP s);
RlfP rlf_concat(SortP s);
RlfP rlf_append(SortP s);
RlfP rlf_coappend(SortP s);
RlfP rlf_block(SortP s, SortP t);
RlfP rlf_group(Group g, SortP s);
RlfP rlf_comp(RlfP f, RlfP g);
RlfP rlf_pair(RlfP f, RlfP g);
RlfP rlf_cases(RlfP f, RlfP g);
RlfP rlf_map(RlfP f);

// yes/no answer sort shared by eq, predicates and language acceptors
SortP answer_sort();
Value answer(bool yes);

// infers the (dom, cod) sorts; throws TypeError carrying the path of the
// offending node, e.g. "/comp/1/map/0"
std::pair<SortP, SortP> typecheck(const RlfP& e);

Value eval_rlf(const RlfP& e, const Value& v);

// ----------------------------------------------------------- derived library

RlfP rlf_singleton(SortP s);                  // x -> [x]
RlfP rlf_map_reverse(SortP sigma, SortP tau);
RlfP rlf_map_duplicate(SortP sigma, SortP tau);
RlfP rlf_duplicate(SortP sigma);              // w -> ww on list(sigma)
RlfP rlf_windows(SortP sigma);                // [x1..xn] -> [(x1,x2),..]
RlfP rlf_filter(RlfP pred);                   // keep elements answering yes
RlfP rlf_conditional(RlfP f, RlfP gyes, RlfP gno);

// word predicate from an expression of type list(Sigma) -> yes/no, where
// Sigma is a polynomial orbit-finite sort
std::function<bool(const Word&)> as_language_acceptor(const RlfP& e);

// acceptor for "at least three distinct letters" over atom words
RlfP three_distinct_letters_rlf();

nlohmann::json rlf_to_json(const RlfP& e);
RlfP rlf_from_json(const nlohmann::json& j);

}  // namespace dw
