#include "dw/reglist.hpp"

namespace dw {

namespace {

RlfP node(RlfExpr e) { return std::make_shared<const RlfExpr>(std::move(e)); }

std::string tag_name(RlfExpr::Tag t) {
	switch (t) {
	case RlfExpr::Const: return "const";
	case RlfExpr::Eq: return "eq";
	case RlfExpr::Id: return "id";
	case RlfExpr::Project: return "project";
	case RlfExpr::Coproject: return "coproject";
	case RlfExpr::Distr: return "distr";
	case RlfExpr::Reverse: return "reverse";
	case RlfExpr::Concat: return "concat";
	case RlfExpr::Append: return "append";
	case RlfExpr::Coappend: return "coappend";
	case RlfExpr::Block: return "block";
	case RlfExpr::GroupPfx: return "group";
	case RlfExpr::Comp: return "comp";
	case RlfExpr::Pair: return "pair";
	case RlfExpr::Cases: return "cases";
	case RlfExpr::Map: return "map";
	}
	return "?";
}

SortP coappend_cod(const SortP& s) {
	return sum_sort(prod_sort(s, list_sort(s)), unit_sort("bot"));
}

}  // namespace

SortP answer_sort() {
	return sum_sort(unit_sort("yes"), unit_sort("no"));
}

Value answer(bool yes) {
	return yes ? vin(0, vu("yes")) : vin(1, vu("no"));
}

// ------------------------------------------------------------- constructors

RlfP rlf_const(SortP dom, SortP cod, Value v) {
	std::vector<Atom> atoms;
	collect_atoms(v, atoms);
	if (!atoms.empty())
		throw Error("TypeError",
		            "constant " + show_value(v) + " contains atoms");
	if (!typechecks(v, cod))
		throw Error("TypeError", "constant " + show_value(v) +
		                             " is not of sort " + show_sort(cod));
	RlfExpr e;
	e.tag = RlfExpr::Const;
	e.value = std::move(v);
	e.s0 = std::move(dom);
	e.s1 = std::move(cod);
	return node(std::move(e));
}

RlfP rlf_eq() {
	RlfExpr e;
	e.tag = RlfExpr::Eq;
	return node(std::move(e));
}

RlfP rlf_id(SortP s) {
	RlfExpr e;
	e.tag = RlfExpr::Id;
	e.s0 = std::move(s);
	return node(std::move(e));
}

static RlfP indexed(RlfExpr::Tag t, int i, SortP s0, SortP s1) {
	if (i != 0 && i != 1)
		throw Error("TypeError", tag_name(t) + " index must be 0 or 1");
	RlfExpr e;
	e.tag = t;
	e.index = i;
	e.s0 = std::move(s0);
	e.s1 = std::move(s1);
	return node(std::move(e));
}

RlfP rlf_project(int i, SortP s0, SortP s1) {
	return indexed(RlfExpr::Project, i, std::move(s0), std::move(s1));
}

RlfP rlf_coproject(int i, SortP s0, SortP s1) {
	return indexed(RlfExpr::Coproject, i, std::move(s0), std::move(s1));
}

RlfP rlf_distr(SortP s0, SortP s1, SortP t) {
	RlfExpr e;
	e.tag = RlfExpr::Distr;
	e.s0 = std::move(s0);
	e.s1 = std::move(s1);
	e.s2 = std::move(t);
	return node(std::move(e));
}

static RlfP unary(RlfExpr::Tag t, SortP s) {
	RlfExpr e;
	e.tag = t;
	e.s0 = std::move(s);
	return node(std::move(e));
}

RlfP rlf_reverse(SortP s) { return unary(RlfExpr::Reverse, std::move(s)); }
RlfP rlf_concat(SortP s) { return unary(RlfExpr::Concat, std::move(s)); }
RlfP rlf_append(SortP s) { return unary(RlfExpr::Append, std::move(s)); }
RlfP rlf_coappend(SortP s) { return unary(RlfExpr::Coappend, std::move(s)); }

RlfP rlf_block(SortP s, SortP t) {
	RlfExpr e;
	e.tag = RlfExpr::Block;
	e.s0 = std::move(s);
	e.s1 = std::move(t);
	return node(std::move(e));
}

RlfP rlf_group(Group g, SortP s) {
	RlfExpr e;
	e.tag = RlfExpr::GroupPfx;
	e.group = std::move(g);
	e.s0 = std::move(s);
	return node(std::move(e));
}

static RlfP binary(RlfExpr::Tag t, RlfP f, RlfP g) {
	RlfExpr e;
	e.tag = t;
	e.kids = {std::move(f), std::move(g)};
	return node(std::move(e));
}

RlfP rlf_comp(RlfP f, RlfP g) {
	return binary(RlfExpr::Comp, std::move(f), std::move(g));
}
RlfP rlf_pair(RlfP f, RlfP g) {
	return binary(RlfExpr::Pair, std::move(f), std::move(g));
}
RlfP rlf_cases(RlfP f, RlfP g) {
	return binary(RlfExpr::Cases, std::move(f), std::move(g));
}

RlfP rlf_map(RlfP f) {
	RlfExpr e;
	e.tag = RlfExpr::Map;
	e.kids = {std::move(f)};
	return node(std::move(e));
}

// -------------------------------------------------------------- typechecker

namespace {

using Sorts = std::pair<SortP, SortP>;

[[noreturn]] void type_error(const std::string& path, const std::string& msg) {
	throw Error("TypeError", path + ": " + msg);
}

void need(const SortP& s, const std::string& path, const std::string& what) {
	if (!s) type_error(path, "missing sort annotation for " + what);
}

Sorts tc(const RlfP& e, const std::string& path) {
	if (!e) type_error(path, "null expression");
	std::string here = path + "/" + tag_name(e->tag);
	auto kid = [&](int i) { return tc(e->kids.at(i), here + ":" + std::to_string(i)); };
	switch (e->tag) {
	case RlfExpr::Const:
		need(e->s0, here, "domain");
		need(e->s1, here, "codomain");
		return {e->s0, e->s1};
	case RlfExpr::Eq:
		return {prod_sort(atom_sort(), atom_sort()), answer_sort()};
	case RlfExpr::Id:
		need(e->s0, here, "sort");
		return {e->s0, e->s0};
	case RlfExpr::Project:
		need(e->s0, here, "left factor");
		need(e->s1, here, "right factor");
		return {prod_sort(e->s0, e->s1), e->index == 0 ? e->s0 : e->s1};
	case RlfExpr::Coproject:
		need(e->s0, here, "left summand");
		need(e->s1, here, "right summand");
		return {e->index == 0 ? e->s0 : e->s1, sum_sort(e->s0, e->s1)};
	case RlfExpr::Distr:
		need(e->s0, here, "left summand");
		need(e->s1, here, "right summand");
		need(e->s2, here, "factor");
		return {prod_sort(sum_sort(e->s0, e->s1), e->s2),
		        sum_sort(prod_sort(e->s0, e->s2), prod_sort(e->s1, e->s2))};
	case RlfExpr::Reverse:
		need(e->s0, here, "element sort");
		return {list_sort(e->s0), list_sort(e->s0)};
	case RlfExpr::Concat:
		need(e->s0, here, "element sort");
		return {list_sort(list_sort(e->s0)), list_sort(e->s0)};
	case RlfExpr::Append:
		need(e->s0, here, "element sort");
		return {prod_sort(e->s0, list_sort(e->s0)), list_sort(e->s0)};
	case RlfExpr::Coappend:
		need(e->s0, here, "element sort");
		return {list_sort(e->s0), coappend_cod(e->s0)};
	case RlfExpr::Block:
		need(e->s0, here, "left summand");
		need(e->s1, here, "right summand");
		return {list_sort(sum_sort(e->s0, e->s1)),
		        list_sort(sum_sort(list_sort(e->s0), list_sort(e->s1)))};
	case RlfExpr::GroupPfx: {
		need(e->s0, here, "letter payload");
		if (e->group.size() == 0) type_error(here, "missing group");
		SortP ls = list_sort(prod_sort(e->group.letter_sort(), e->s0));
		return {ls, ls};
	}
	case RlfExpr::Comp: {
		if (e->kids.size() != 2) type_error(here, "needs two operands");
		Sorts f = kid(0), g = kid(1);
		if (!same_sort(g.second, f.first))
			type_error(here, "cannot feed " + show_sort(g.second) +
			                     " into " + show_sort(f.first));
		return {g.first, f.second};
	}
	case RlfExpr::Pair: {
		if (e->kids.size() != 2) type_error(here, "needs two operands");
		Sorts f = kid(0), g = kid(1);
		if (!same_sort(f.first, g.first))
			type_error(here, "components disagree on the domain: " +
			                     show_sort(f.first) + " vs " +
			                     show_sort(g.first));
		return {f.first, prod_sort(f.second, g.second)};
	}
	case RlfExpr::Cases: {
		if (e->kids.size() != 2) type_error(here, "needs two operands");
		Sorts f = kid(0), g = kid(1);
		if (!same_sort(f.second, g.second))
			type_error(here, "branches disagree on the codomain: " +
			                     show_sort(f.second) + " vs " +
			                     show_sort(g.second));
		return {sum_sort(f.first, g.first), f.second};
	}
	case RlfExpr::Map: {
		if (e->kids.size() != 1) type_error(here, "needs one operand");
		Sorts f = kid(0);
		return {list_sort(f.first), list_sort(f.second)};
	}
	}
	type_error(here, "unknown node");
}

}  // namespace

std::pair<SortP, SortP> typecheck(const RlfP& e) { return tc(e, ""); }

// ---------------------------------------------------------------- evaluator

namespace {

Value ev(const RlfP& e, const Value& v) {
	switch (e->tag) {
	case RlfExpr::Const:
		return e->value;
	case RlfExpr::Eq:
		return answer(v.kids[0] == v.kids[1]);
	case RlfExpr::Id:
		return v;
	case RlfExpr::Project:
		return v.kids[e->index];
	case RlfExpr::Coproject:
		return vin(e->index, v);
	case RlfExpr::Distr:
		return vin(v.kids[0].side, vp(v.kids[0].kids[0], v.kids[1]));
	case RlfExpr::Reverse: {
		std::vector<Value> out(v.kids.rbegin(), v.kids.rend());
		return vl(std::move(out));
	}
	case RlfExpr::Concat: {
		std::vector<Value> out;
		for (const Value& l : v.kids)
			out.insert(out.end(), l.kids.begin(), l.kids.end());
		return vl(std::move(out));
	}
	case RlfExpr::Append: {
		std::vector<Value> out = {v.kids[0]};
		out.insert(out.end(), v.kids[1].kids.begin(), v.kids[1].kids.end());
		return vl(std::move(out));
	}
	case RlfExpr::Coappend: {
		if (v.kids.empty()) return vin(1, vu("bot"));
		std::vector<Value> rest(v.kids.begin() + 1, v.kids.end());
		return vin(0, vp(v.kids[0], vl(std::move(rest))));
	}
	case RlfExpr::Block: {
		std::vector<Value> out, run;
		int cur = -1;
		for (const Value& el : v.kids) {
			if (el.side != cur && cur != -1) {
				out.push_back(vin(cur, vl(std::move(run))));
				run.clear();
			}
			cur = el.side;
			run.push_back(el.kids[0]);
		}
		if (cur != -1) out.push_back(vin(cur, vl(std::move(run))));
		return vl(std::move(out));
	}
	case RlfExpr::GroupPfx: {
		std::vector<Value> out;
		int acc = 0;
		for (const Value& el : v.kids) {
			out.push_back(vp(e->group.letter(acc), el.kids[1]));
			acc = e->group.op(acc, e->group.element(el.kids[0]));
		}
		return vl(std::move(out));
	}
	case RlfExpr::Comp:
		return ev(e->kids[0], ev(e->kids[1], v));
	case RlfExpr::Pair:
		return vp(ev(e->kids[0], v), ev(e->kids[1], v));
	case RlfExpr::Cases:
		return ev(e->kids[v.side], v.kids[0]);
	case RlfExpr::Map: {
		std::vector<Value> out;
		out.reserve(v.kids.size());
		for (const Value& el : v.kids) out.push_back(ev(e->kids[0], el));
		return vl(std::move(out));
	}
	}
	throw Error("TypeError", "unknown node");
}

}  // namespace

Value eval_rlf(const RlfP& e, const Value& v) {
	SortP dom = typecheck(e).first;
	if (!typechecks(v, dom))
		throw Error("SortMismatch", "value " + show_value(v) +
		                                " is not of sort " + show_sort(dom));
	return ev(e, v);
}

// ----------------------------------------------------------- derived library

RlfP rlf_singleton(SortP s) {
	return rlf_comp(rlf_append(s),
	                rlf_pair(rlf_id(s), rlf_const(s, list_sort(s), vl({}))));
}

// per-block action for the map-over-blocks derivations: apply f / g to the
// two block kinds and re-embed the elements into the summed alphabet
static RlfP on_blocks(const SortP& sigma, const SortP& tau, RlfP f, RlfP g) {
	RlfP per = rlf_cases(
	    rlf_comp(rlf_map(rlf_coproject(0, sigma, tau)), std::move(f)),
	    rlf_comp(rlf_map(rlf_coproject(1, sigma, tau)), std::move(g)));
	return rlf_comp(rlf_concat(sum_sort(sigma, tau)),
	                rlf_comp(rlf_map(per), rlf_block(sigma, tau)));
}

RlfP rlf_map_reverse(SortP sigma, SortP tau) {
	return on_blocks(sigma, tau, rlf_reverse(sigma), rlf_reverse(tau));
}

RlfP rlf_map_duplicate(SortP sigma, SortP tau) {
	return on_blocks(sigma, tau, rlf_duplicate(sigma),
	                 rlf_id(list_sort(tau)));
}

RlfP rlf_duplicate(SortP sigma) {
	SortP ls = list_sort(sigma);
	// w -> (w,[w]) -> [w,w] -> ww
	return rlf_comp(
	    rlf_concat(sigma),
	    rlf_comp(rlf_append(ls), rlf_pair(rlf_id(ls), rlf_singleton(ls))));
}

RlfP rlf_windows(SortP sigma) {
	SortP ls = list_sort(sigma), pp = prod_sort(sigma, sigma);
	SortP bot = unit_sort("bot");
	// [x1..xn] -> [x1,x1,..,xn,xn], then shave one letter off each end,
	// leaving the flattening of the windows
	RlfP twice = rlf_comp(rlf_append(sigma),
	                      rlf_pair(rlf_id(sigma), rlf_singleton(sigma)));
	RlfP dbl = rlf_comp(rlf_concat(sigma), rlf_map(twice));
	RlfP drop_first =
	    rlf_comp(rlf_cases(rlf_project(1, sigma, ls),
	                       rlf_const(bot, ls, vl({}))),
	             rlf_coappend(sigma));
	RlfP drop_last =
	    rlf_comp(rlf_reverse(sigma), rlf_comp(drop_first, rlf_reverse(sigma)));
	RlfP core = rlf_comp(drop_last, rlf_comp(drop_first, dbl));

	// two rounds of Z2 prefix products turn positions 1,2,3,4,... into the
	// tag pattern L,L,R,R,L,L,..., so block cuts the list into adjacent pairs
	Group z2 = Group::cyclic(2);
	SortP gs = z2.letter_sort();
	RlfP tag = rlf_map(
	    rlf_pair(rlf_const(sigma, gs, z2.letter(1)), rlf_id(sigma)));
	RlfP untag = rlf_map(rlf_comp(
	    rlf_cases(
	        rlf_comp(rlf_coproject(0, sigma, sigma),
	                 rlf_project(1, gs->left, sigma)),
	        rlf_comp(rlf_coproject(1, sigma, sigma),
	                 rlf_project(1, gs->right, sigma))),
	    rlf_distr(gs->left, gs->right, sigma)));

	// a two-element block [a,b] becomes [(a,b)]; the impossible shapes map
	// to the empty list so the branches stay total
	SortP ps = prod_sort(sigma, ls), sum_s = coappend_cod(sigma);
	RlfP first_two = rlf_pair(
	    rlf_project(0, sigma, ls),
	    rlf_comp(rlf_coappend(sigma), rlf_project(1, sigma, ls)));
	RlfP swap =
	    rlf_pair(rlf_project(1, sigma, sum_s), rlf_project(0, sigma, sum_s));
	RlfP make_pair = rlf_comp(
	    rlf_singleton(pp),
	    rlf_pair(rlf_project(1, ps, sigma),
	             rlf_comp(rlf_project(0, sigma, ls), rlf_project(0, ps, sigma))));
	RlfP inner = rlf_comp(
	    rlf_cases(make_pair,
	              rlf_const(prod_sort(bot, sigma), list_sort(pp), vl({}))),
	    rlf_comp(rlf_distr(ps, bot, sigma), rlf_comp(swap, first_two)));
	RlfP per_block = rlf_comp(
	    rlf_cases(inner, rlf_const(bot, list_sort(pp), vl({}))),
	    rlf_coappend(sigma));

	return rlf_comp(
	    rlf_concat(pp),
	    rlf_comp(rlf_map(rlf_cases(per_block, per_block)),
	             rlf_comp(rlf_block(sigma, sigma),
	                      rlf_comp(untag,
	                               rlf_comp(rlf_group(z2, sigma),
	                                        rlf_comp(rlf_group(z2, sigma),
	                                                 rlf_comp(tag, core)))))));
}

RlfP rlf_filter(RlfP pred) {
	auto [sigma, cod] = typecheck(pred);
	if (!same_sort(cod, answer_sort()))
		throw Error("TypeError", "filter predicate must answer yes/no, got " +
		                             show_sort(cod));
	SortP ys = unit_sort("yes"), ns = unit_sort("no");
	RlfP keep = rlf_comp(
	    rlf_cases(rlf_comp(rlf_singleton(sigma), rlf_project(1, ys, sigma)),
	              rlf_const(prod_sort(ns, sigma), list_sort(sigma), vl({}))),
	    rlf_comp(rlf_distr(ys, ns, sigma),
	             rlf_pair(std::move(pred), rlf_id(sigma))));
	return rlf_comp(rlf_concat(sigma), rlf_map(keep));
}

RlfP rlf_conditional(RlfP f, RlfP gyes, RlfP gno) {
	auto [sigma, fc] = typecheck(f);
	if (!same_sort(fc, answer_sort()))
		throw Error("TypeError", "condition must answer yes/no, got " +
		                             show_sort(fc));
	auto y = typecheck(gyes), n = typecheck(gno);
	if (!same_sort(y.first, sigma) || !same_sort(n.first, sigma) ||
	    !same_sort(y.second, n.second))
		throw Error("TypeError", "branch sorts do not line up");
	SortP ys = unit_sort("yes"), ns = unit_sort("no");
	return rlf_comp(
	    rlf_cases(rlf_comp(std::move(gyes), rlf_project(1, ys, sigma)),
	              rlf_comp(std::move(gno), rlf_project(1, ns, sigma))),
	    rlf_comp(rlf_distr(ys, ns, sigma),
	             rlf_pair(std::move(f), rlf_id(sigma))));
}

std::function<bool(const Word&)> as_language_acceptor(const RlfP& e) {
	auto [dom, cod] = typecheck(e);
	if (!same_sort(cod, answer_sort()))
		throw Error("TypeError",
		            "acceptor must answer yes/no, got " + show_sort(cod));
	if (dom->kind != Sort::List || has_list(dom->left))
		throw Error("TypeError",
		            "acceptor domain must be words over a polynomial "
		            "orbit-finite sort, got " +
		                show_sort(dom));
	return [e](const Word& w) { return eval_rlf(e, vl(w)).side == 0; };
}

RlfP three_distinct_letters_rlf() {
	SortP a = atom_sort(), la = list_sort(a), bot = unit_sort("bot");
	SortP aa = prod_sort(a, a);
	// the first letter, as a zero-or-one element list
	RlfP firsts = rlf_comp(
	    rlf_cases(rlf_comp(rlf_singleton(a), rlf_project(0, a, la)),
	              rlf_const(bot, la, vl({}))),
	    rlf_coappend(a));
	// letters that differ from their predecessor, i.e. the letters opening
	// a new run of equal letters (beyond the first run)
	RlfP changed = rlf_comp(
	    rlf_cases(rlf_const(prod_sort(unit_sort("yes"), aa), la, vl({})),
	              rlf_comp(rlf_singleton(a),
	                       rlf_comp(rlf_project(1, a, a),
	                                rlf_project(1, unit_sort("no"), aa)))),
	    rlf_comp(rlf_distr(unit_sort("yes"), unit_sort("no"), aa),
	             rlf_pair(rlf_eq(), rlf_id(aa))));
	RlfP openers =
	    rlf_comp(rlf_concat(a), rlf_comp(rlf_map(changed), rlf_windows(a)));
	// run representatives = first letter followed by the run openers
	RlfP both = rlf_comp(
	    rlf_append(la),
	    rlf_pair(rlf_project(0, la, la),
	             rlf_comp(rlf_singleton(la), rlf_project(1, la, la))));
	RlfP reps = rlf_comp(rlf_concat(a),
	                     rlf_comp(both, rlf_pair(firsts, openers)));
	// adjacent representatives always differ, so three distinct letters
	// exist exactly when some representative differs from its
	// next-to-next neighbour
	RlfP outer = rlf_comp(
	    rlf_eq(),
	    rlf_pair(rlf_comp(rlf_project(0, a, a), rlf_project(0, aa, aa)),
	             rlf_comp(rlf_project(1, a, a), rlf_project(1, aa, aa))));
	SortP w = unit_sort("w"), lw = list_sort(w);
	RlfP witness = rlf_cases(rlf_const(unit_sort("yes"), lw, vl({})),
	                         rlf_const(unit_sort("no"), lw, vl({vu("w")})));
	RlfP nonempty = rlf_comp(
	    rlf_cases(rlf_const(prod_sort(w, lw), answer_sort(), answer(true)),
	              rlf_const(bot, answer_sort(), answer(false))),
	    rlf_coappend(w));
	return rlf_comp(
	    nonempty,
	    rlf_comp(rlf_concat(w),
	             rlf_comp(rlf_map(witness),
	                      rlf_comp(rlf_map(outer),
	                               rlf_comp(rlf_windows(aa),
	                                        rlf_comp(rlf_windows(a), reps))))));
}

// --------------------------------------------------------------------- JSON

nlohmann::json rlf_to_json(const RlfP& e) {
	nlohmann::json j;
	j["tag"] = tag_name(e->tag);
	switch (e->tag) {
	case RlfExpr::Const:
		j["dom"] = show_sort(e->s0);
		j["cod"] = show_sort(e->s1);
		j["value"] = show_for_sort(e->value, e->s1);
		break;
	case RlfExpr::Eq:
		break;
	case RlfExpr::Id:
	case RlfExpr::Reverse:
	case RlfExpr::Concat:
	case RlfExpr::Append:
	case RlfExpr::Coappend:
		j["s"] = show_sort(e->s0);
		break;
	case RlfExpr::Project:
	case RlfExpr::Coproject:
		j["i"] = e->index;
		j["s0"] = show_sort(e->s0);
		j["s1"] = show_sort(e->s1);
		break;
	case RlfExpr::Distr:
		j["s0"] = show_sort(e->s0);
		j["s1"] = show_sort(e->s1);
		j["t"] = show_sort(e->s2);
		break;
	case RlfExpr::Block:
		j["s0"] = show_sort(e->s0);
		j["s1"] = show_sort(e->s1);
		break;
	case RlfExpr::GroupPfx:
		j["table"] = e->group.table();
		j["s"] = show_sort(e->s0);
		break;
	case RlfExpr::Comp:
	case RlfExpr::Pair:
	case RlfExpr::Cases:
		j["f"] = rlf_to_json(e->kids[0]);
		j["g"] = rlf_to_json(e->kids[1]);
		break;
	case RlfExpr::Map:
		j["f"] = rlf_to_json(e->kids[0]);
		break;
	}
	return j;
}

RlfP rlf_from_json(const nlohmann::json& j) {
	std::string tag = j.at("tag").get<std::string>();
	auto srt = [&](const char* k) {
		return parse_sort(j.at(k).get<std::string>());
	};
	if (tag == "const") {
		SortP cod = srt("cod");
		return rlf_const(srt("dom"), cod,
		                 parse_for_sort(j.at("value").get<std::string>(), cod));
	}
	if (tag == "eq") return rlf_eq();
	if (tag == "id") return rlf_id(srt("s"));
	if (tag == "project")
		return rlf_project(j.at("i").get<int>(), srt("s0"), srt("s1"));
	if (tag == "coproject")
		return rlf_coproject(j.at("i").get<int>(), srt("s0"), srt("s1"));
	if (tag == "distr") return rlf_distr(srt("s0"), srt("s1"), srt("t"));
	if (tag == "reverse") return rlf_reverse(srt("s"));
	if (tag == "concat") return rlf_concat(srt("s"));
	if (tag == "append") return rlf_append(srt("s"));
	if (tag == "coappend") return rlf_coappend(srt("s"));
	if (tag == "block") return rlf_block(srt("s0"), srt("s1"));
	if (tag == "group")
		return rlf_group(
		    Group::of_table(
		        j.at("table").get<std::vector<std::vector<int>>>()),
		    srt("s"));
	if (tag == "comp")
		return rlf_comp(rlf_from_json(j.at("f")), rlf_from_json(j.at("g")));
	if (tag == "pair")
		return rlf_pair(rlf_from_json(j.at("f")), rlf_from_json(j.at("g")));
	if (tag == "cases")
		return rlf_cases(rlf_from_json(j.at("f")), rlf_from_json(j.at("g")));
	if (tag == "map") return rlf_map(rlf_from_json(j.at("f")));
	throw Error("ParseError", "unknown expression tag '" + tag + "'");
}

}  // namespace dw
