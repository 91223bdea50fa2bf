#include "dw/atoms.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dw {

// ---------------------------------------------------------------- sorts

static SortP mk(Sort::Kind k, std::string name, SortP l, SortP r) {
	auto s = std::make_shared<Sort>();
	s->kind = k;
	s->name = std::move(name);
	s->left = std::move(l);
	s->right = std::move(r);
	return s;
}

SortP atom_sort() {
	static SortP s = mk(Sort::Atoms, "", nullptr, nullptr);
	return s;
}
SortP unit_sort(const std::string& name) {
	return mk(Sort::Unit, name, nullptr, nullptr);
}
SortP prod_sort(SortP a, SortP b) {
	return mk(Sort::Prod, "", std::move(a), std::move(b));
}
SortP sum_sort(SortP a, SortP b) {
	return mk(Sort::Sum, "", std::move(a), std::move(b));
}
SortP list_sort(SortP elem) {
	return mk(Sort::List, "", std::move(elem), nullptr);
}

bool same_sort(const SortP& a, const SortP& b) {
	if (a.get() == b.get()) return true;
	if (!a || !b) return false;
	if (a->kind != b->kind) return false;
	switch (a->kind) {
	case Sort::Atoms: return true;
	case Sort::Unit: return a->name == b->name;
	case Sort::Prod:
	case Sort::Sum:
		return same_sort(a->left, b->left) && same_sort(a->right, b->right);
	case Sort::List: return same_sort(a->left, b->left);
	}
	return false;
}

bool has_list(const SortP& s) {
	switch (s->kind) {
	case Sort::Atoms:
	case Sort::Unit: return false;
	case Sort::Prod:
	case Sort::Sum: return has_list(s->left) || has_list(s->right);
	case Sort::List: return true;
	}
	return false;
}

int atom_dim(const SortP& s) {
	switch (s->kind) {
	case Sort::Atoms: return 1;
	case Sort::Unit: return 0;
	case Sort::Prod: return atom_dim(s->left) + atom_dim(s->right);
	case Sort::Sum: return std::max(atom_dim(s->left), atom_dim(s->right));
	case Sort::List:
		throw Error("SortMismatch", "atom_dim on list sort " + show_sort(s));
	}
	return 0;
}

std::string show_sort(const SortP& s) {
	switch (s->kind) {
	case Sort::Atoms: return "A";
	case Sort::Unit: return "unit(" + s->name + ")";
	case Sort::Prod: {
		auto side = [](const SortP& c) {
			std::string t = show_sort(c);
			if (c->kind == Sort::Sum || c->kind == Sort::Prod)
				return "(" + t + ")";
			return t;
		};
		return side(s->left) + "*" + side(s->right);
	}
	case Sort::Sum: {
		auto side = [](const SortP& c) {
			std::string t = show_sort(c);
			if (c->kind == Sort::Sum) return "(" + t + ")";
			return t;
		};
		return side(s->left) + "+" + side(s->right);
	}
	case Sort::List: return "list(" + show_sort(s->left) + ")";
	}
	return "?";
}

namespace {

struct Cursor {
	const std::string& s;
	size_t i = 0;
	void skip() {
		while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
	}
	bool eat(char c) {
		skip();
		if (i < s.size() && s[i] == c) {
			i++;
			return true;
		}
		return false;
	}
	void expect(char c) {
		if (!eat(c))
			throw Error("ParseError", std::string("expected '") + c +
			                              "' at offset " + std::to_string(i) +
			                              " in: " + s);
	}
	char peek() {
		skip();
		return i < s.size() ? s[i] : '\0';
	}
	std::string ident() {
		skip();
		size_t j = i;
		while (j < s.size() &&
		       (std::isalnum((unsigned char)s[j]) || s[j] == '_'))
			j++;
		if (j == i)
			throw Error("ParseError", "expected identifier at offset " +
			                              std::to_string(i) + " in: " + s);
		std::string r = s.substr(i, j - i);
		i = j;
		return r;
	}
	void done() {
		skip();
		if (i != s.size())
			throw Error("ParseError", "trailing input at offset " +
			                              std::to_string(i) + " in: " + s);
	}
};

SortP parse_sort_sum(Cursor& c);

SortP parse_sort_atomic(Cursor& c) {
	if (c.eat('(')) {
		SortP s = parse_sort_sum(c);
		c.expect(')');
		return s;
	}
	std::string id = c.ident();
	if (id == "A") return atom_sort();
	if (id == "unit") {
		c.expect('(');
		std::string n = c.ident();
		c.expect(')');
		return unit_sort(n);
	}
	if (id == "list") {
		c.expect('(');
		SortP e = parse_sort_sum(c);
		c.expect(')');
		return list_sort(e);
	}
	throw Error("ParseError", "unknown sort head '" + id + "' in: " + c.s);
}

SortP parse_sort_prod(Cursor& c) {
	SortP s = parse_sort_atomic(c);
	while (c.peek() == '*') {
		c.eat('*');
		s = prod_sort(s, parse_sort_atomic(c));
	}
	return s;
}

SortP parse_sort_sum(Cursor& c) {
	SortP s = parse_sort_prod(c);
	while (c.peek() == '+') {
		c.eat('+');
		s = sum_sort(s, parse_sort_prod(c));
	}
	return s;
}

}  // namespace

SortP parse_sort(const std::string& text) {
	Cursor c{text};
	SortP s = parse_sort_sum(c);
	c.done();
	return s;
}

// ---------------------------------------------------------------- values

bool Value::operator==(const Value& o) const {
	return kind == o.kind && atom == o.atom && name == o.name &&
	       side == o.side && kids == o.kids;
}

bool Value::operator<(const Value& o) const {
	if (kind != o.kind) return kind < o.kind;
	if (atom != o.atom) return atom < o.atom;
	if (name != o.name) return name < o.name;
	if (side != o.side) return side < o.side;
	return kids < o.kids;
}

Value va(Atom a) {
	Value v;
	v.kind = Value::AtomV;
	v.atom = a;
	return v;
}
Value vu(const std::string& name) {
	Value v;
	v.kind = Value::UnitV;
	v.name = name;
	return v;
}
Value vp(Value a, Value b) {
	Value v;
	v.kind = Value::PairV;
	v.kids = {std::move(a), std::move(b)};
	return v;
}
Value vin(int side, Value x) {
	Value v;
	v.kind = Value::InjV;
	v.side = side;
	v.kids = {std::move(x)};
	return v;
}
Value vl(std::vector<Value> elems) {
	Value v;
	v.kind = Value::ListV;
	v.kids = std::move(elems);
	return v;
}

bool typechecks(const Value& v, const SortP& s) {
	switch (s->kind) {
	case Sort::Atoms: return v.kind == Value::AtomV;
	case Sort::Unit: return v.kind == Value::UnitV && v.name == s->name;
	case Sort::Prod:
		return v.kind == Value::PairV && typechecks(v.kids[0], s->left) &&
		       typechecks(v.kids[1], s->right);
	case Sort::Sum:
		return v.kind == Value::InjV &&
		       typechecks(v.kids[0], v.side == 0 ? s->left : s->right);
	case Sort::List:
		if (v.kind != Value::ListV) return false;
		for (auto& k : v.kids)
			if (!typechecks(k, s->left)) return false;
		return true;
	}
	return false;
}

std::string show_value(const Value& v) {
	switch (v.kind) {
	case Value::AtomV: return "#" + std::to_string(v.atom);
	case Value::UnitV: return v.name;
	case Value::PairV:
		return "(" + show_value(v.kids[0]) + "," + show_value(v.kids[1]) + ")";
	case Value::InjV:
		return (v.side == 0 ? "L:" : "R:") + show_value(v.kids[0]);
	case Value::ListV: {
		std::string r = "[";
		for (size_t i = 0; i < v.kids.size(); i++) {
			if (i) r += ",";
			r += show_value(v.kids[i]);
		}
		return r + "]";
	}
	}
	return "?";
}

namespace {

Value parse_value_at(Cursor& c) {
	char p = c.peek();
	if (p == '#') {
		c.eat('#');
		std::string d = c.ident();
		for (char ch : d)
			if (!std::isdigit((unsigned char)ch))
				throw Error("ParseError", "bad atom literal #" + d);
		return va(std::stoull(d));
	}
	if (p == '(') {
		c.eat('(');
		Value a = parse_value_at(c);
		c.expect(',');
		Value b = parse_value_at(c);
		c.expect(')');
		return vp(std::move(a), std::move(b));
	}
	if (p == '[') {
		c.eat('[');
		std::vector<Value> elems;
		if (c.peek() != ']') {
			elems.push_back(parse_value_at(c));
			while (c.eat(',')) elems.push_back(parse_value_at(c));
		}
		c.expect(']');
		return vl(std::move(elems));
	}
	std::string id = c.ident();
	if ((id == "L" || id == "R") && c.peek() == ':') {
		c.eat(':');
		return vin(id == "L" ? 0 : 1, parse_value_at(c));
	}
	return vu(id);
}

}  // namespace

Value parse_value(const std::string& text) {
	Cursor c{text};
	Value v = parse_value_at(c);
	c.done();
	return v;
}

std::string show_word(const Word& w) {
	std::string r;
	for (size_t i = 0; i < w.size(); i++) {
		if (i) r += ",";
		r += show_value(w[i]);
	}
	return r;
}

Word parse_word(const std::string& text) {
	Cursor c{text};
	Word w;
	c.skip();
	if (c.i == text.size()) return w;
	w.push_back(parse_value_at(c));
	while (c.eat(',')) w.push_back(parse_value_at(c));
	c.done();
	return w;
}

std::optional<Value> coerce(const Value& v, const SortP& s) {
	if (typechecks(v, s)) return v;
	switch (s->kind) {
	case Sort::Sum:
		if (v.kind != Value::InjV) {
			if (auto l = coerce(v, s->left)) return vin(0, *l);
			if (auto r = coerce(v, s->right)) return vin(1, *r);
		}
		return std::nullopt;
	case Sort::Prod:
		if (v.kind == Value::PairV) {
			auto a = coerce(v.kids[0], s->left);
			auto b = coerce(v.kids[1], s->right);
			if (a && b) return vp(*a, *b);
		}
		return std::nullopt;
	case Sort::List:
		if (v.kind == Value::ListV) {
			std::vector<Value> out;
			for (auto& k : v.kids) {
				auto e = coerce(k, s->left);
				if (!e) return std::nullopt;
				out.push_back(*e);
			}
			return vl(std::move(out));
		}
		return std::nullopt;
	default: return std::nullopt;
	}
}

Value flatten(const Value& v) {
	switch (v.kind) {
	case Value::InjV: return flatten(v.kids[0]);
	case Value::PairV: return vp(flatten(v.kids[0]), flatten(v.kids[1]));
	case Value::ListV: {
		std::vector<Value> out;
		for (auto& k : v.kids) out.push_back(flatten(k));
		return vl(std::move(out));
	}
	default: return v;
	}
}

std::string show_word_flat(const Word& w) {
	std::string r;
	for (size_t i = 0; i < w.size(); i++) {
		if (i) r += ",";
		r += show_value(flatten(w[i]));
	}
	return r;
}

void collect_atoms(const Value& v, std::vector<Atom>& out) {
	if (v.kind == Value::AtomV) {
		out.push_back(v.atom);
		return;
	}
	for (auto& k : v.kids) collect_atoms(k, out);
}

std::vector<Atom> least_support(const Value& v) {
	std::vector<Atom> all;
	collect_atoms(v, all);
	std::vector<Atom> out;
	for (Atom a : all)
		if (std::find(out.begin(), out.end(), a) == out.end())
			out.push_back(a);
	return out;
}

std::vector<Atom> least_support(const Word& w) {
	std::vector<Atom> all;
	for (auto& v : w) collect_atoms(v, all);
	std::vector<Atom> out;
	for (Atom a : all)
		if (std::find(out.begin(), out.end(), a) == out.end())
			out.push_back(a);
	return out;
}

Value map_atoms(const Value& v, const std::function<Atom(Atom)>& f) {
	if (v.kind == Value::AtomV) return va(f(v.atom));
	Value r = v;
	for (auto& k : r.kids) k = map_atoms(k, f);
	return r;
}

// ------------------------------------------------------------ permutations

Perm Perm::transposition(Atom a, Atom b) {
	Perm p;
	if (a != b) {
		p.fwd_[a] = b;
		p.fwd_[b] = a;
	}
	return p;
}

Perm Perm::of_pairs(const std::vector<std::pair<Atom, Atom>>& ps) {
	Perm p;
	std::set<Atom> seen;
	for (auto& [a, b] : ps) {
		if (!p.fwd_.emplace(a, b).second)
			throw Error("BadPerm", "duplicate source atom");
		if (!seen.insert(b).second)
			throw Error("BadPerm", "duplicate target atom");
	}
	// partial map must be a bijection of its domain onto its image that can
	// extend to a permutation fixing everything else: domain == image as sets
	std::set<Atom> dom;
	for (auto& [a, b] : p.fwd_) dom.insert(a);
	if (dom != seen) throw Error("BadPerm", "domain and image differ");
	return p;
}

Atom Perm::operator()(Atom a) const {
	auto it = fwd_.find(a);
	return it == fwd_.end() ? a : it->second;
}

Perm Perm::then(const Perm& next) const {
	std::set<Atom> dom;
	for (auto& [a, b] : fwd_) dom.insert(a);
	for (auto& [a, b] : next.fwd_) dom.insert(a);
	Perm r;
	for (Atom a : dom) {
		Atom b = next((*this)(a));
		if (b != a) r.fwd_[a] = b;
	}
	return r;
}

Perm Perm::inverse() const {
	Perm r;
	for (auto& [a, b] : fwd_) r.fwd_[b] = a;
	return r;
}

std::string Perm::show() const {
	std::string r = "{";
	bool first = true;
	for (auto& [a, b] : fwd_) {
		if (!first) r += ",";
		first = false;
		r += "#" + std::to_string(a) + "->#" + std::to_string(b);
	}
	return r + "}";
}

Value apply_perm(const Perm& p, const Value& v) {
	return map_atoms(v, [&](Atom a) { return p(a); });
}

Word apply_perm(const Perm& p, const Word& w) {
	Word r;
	r.reserve(w.size());
	for (auto& v : w) r.push_back(apply_perm(p, v));
	return r;
}

// --------------------------------------------------------- equality types

Value canonical_form(const Value& v) {
	std::map<Atom, Atom> ren;
	return map_atoms(v, [&](Atom a) {
		auto it = ren.find(a);
		if (it != ren.end()) return it->second;
		Atom fresh = ren.size();
		ren[a] = fresh;
		return fresh;
	});
}

Word canonical_form(const Word& w) {
	std::map<Atom, Atom> ren;
	Word r;
	r.reserve(w.size());
	for (auto& v : w)
		r.push_back(map_atoms(v, [&](Atom a) {
			auto it = ren.find(a);
			if (it != ren.end()) return it->second;
			Atom fresh = ren.size();
			ren[a] = fresh;
			return fresh;
		}));
	return r;
}

EqType equality_type(const Value& v) { return EqType{canonical_form(v)}; }

// ------------------------------------------------------- pattern functions

PatternFn PatternFn::make(SortP dom, SortP cod, std::vector<PatternCase> cs,
                          const std::optional<Value>& otherwise) {
	PatternFn f;
	f.dom = std::move(dom);
	f.cod = std::move(cod);
	std::set<Value> seen;
	for (auto& c : cs) {
		if (!typechecks(c.guard, f.dom))
			throw Error("SortMismatch",
			            "guard " + show_value(c.guard) + " is not of sort " +
			                show_sort(f.dom));
		if (!(canonical_form(c.guard) == c.guard))
			throw Error("BadPattern",
			            "guard " + show_value(c.guard) + " is not canonical");
		if (!seen.insert(c.guard).second)
			throw Error("BadPattern",
			            "duplicate guard " + show_value(c.guard));
		size_t m = least_support(c.guard).size();
		std::vector<Atom> refs;
		collect_atoms(c.tmpl, refs);
		for (Atom r : refs)
			if (r >= m)
				throw Error("BadPattern",
				            "template " + show_value(c.tmpl) +
				                " refers to atom slot #" + std::to_string(r) +
				                " but guard has " + std::to_string(m));
		if (!typechecks(c.tmpl, f.cod))
			throw Error("SortMismatch",
			            "template " + show_value(c.tmpl) +
			                " is not of sort " + show_sort(f.cod));
	}
	f.cases = std::move(cs);
	for (const Value& rep : orbit_reps(f.dom)) {
		if (seen.count(rep)) continue;
		if (!otherwise)
			throw Error("BadPattern",
			            "no case for equality type " + show_value(rep));
		if (!least_support(*otherwise).empty())
			throw Error("BadPattern", "default template must be atomless");
		if (!typechecks(*otherwise, f.cod))
			throw Error("SortMismatch", "default template is not of sort " +
			                                show_sort(f.cod));
		f.cases.push_back({rep, *otherwise});
	}
	return f;
}

const PatternCase& PatternFn::case_for(const Value& v) const {
	Value c = canonical_form(v);
	for (auto& pc : cases)
		if (pc.guard == c) return pc;
	throw Error("SortMismatch",
	            "value " + show_value(v) + " is not of sort " + show_sort(dom));
}

Value PatternFn::operator()(const Value& v) const {
	if (!typechecks(v, dom))
		throw Error("SortMismatch", "value " + show_value(v) +
		                                " is not of sort " + show_sort(dom));
	const PatternCase& pc = case_for(v);
	std::vector<Atom> sup = least_support(v);
	return map_atoms(pc.tmpl, [&](Atom slot) { return sup[slot]; });
}

PatternFn const_fn(SortP dom, SortP cod, const Value& out) {
	return PatternFn::make(std::move(dom), std::move(cod), {}, out);
}

PatternFn compose_fn(const PatternFn& f, const PatternFn& g) {
	if (!same_sort(f.dom, g.cod))
		throw Error("SortMismatch", "compose_fn: " + show_sort(f.dom) +
		                                " vs " + show_sort(g.cod));
	// canonical reps label atoms 0..m-1 in first-occurrence order, so the
	// value f(g(rep)) is already a template over the guard's slots
	std::vector<PatternCase> cs;
	for (const Value& rep : orbit_reps(g.dom)) cs.push_back({rep, f(g(rep))});
	return PatternFn::make(g.dom, f.cod, std::move(cs));
}

// ------------------------------------------------------------- enumeration

std::vector<Value> sort_skeletons(const SortP& s) {
	switch (s->kind) {
	case Sort::Atoms: return {va(0)};
	case Sort::Unit: return {vu(s->name)};
	case Sort::Prod: {
		std::vector<Value> out;
		for (const Value& l : sort_skeletons(s->left))
			for (const Value& r : sort_skeletons(s->right)) {
				size_t off = least_support(l).size();
				out.push_back(
				    vp(l, map_atoms(r, [&](Atom a) { return a + off; })));
			}
		return out;
	}
	case Sort::Sum: {
		std::vector<Value> out;
		for (const Value& l : sort_skeletons(s->left))
			out.push_back(vin(0, l));
		for (const Value& r : sort_skeletons(s->right))
			out.push_back(vin(1, r));
		return out;
	}
	case Sort::List:
		throw Error("SortMismatch", "cannot enumerate list sort " +
		                                show_sort(s));
	}
	return {};
}

std::vector<std::vector<int>> growth_strings(int m) {
	std::vector<std::vector<int>> out;
	std::vector<int> cur(m, 0);
	std::function<void(int, int)> go = [&](int i, int maxv) {
		if (i == m) {
			out.push_back(cur);
			return;
		}
		for (int v = 0; v <= maxv + 1; v++) {
			cur[i] = v;
			go(i + 1, std::max(maxv, v));
		}
	};
	if (m == 0)
		out.push_back({});
	else
		go(0, -1);
	return out;
}

std::vector<Value> orbit_reps(const SortP& s) {
	std::vector<Value> out;
	for (const Value& sk : sort_skeletons(s)) {
		int m = (int)least_support(sk).size();
		for (auto& gs : growth_strings(m))
			out.push_back(map_atoms(sk, [&](Atom i) { return (Atom)gs[i]; }));
	}
	return out;
}

std::vector<Word> canonical_words(const SortP& s, int len) {
	// enumerate skeleton sequences, then growth strings over the combined
	// atom slots; every orbit of s^len has exactly one such representative
	std::vector<Value> sks = sort_skeletons(s);
	std::vector<Word> out;
	std::vector<Value> cur;
	std::function<void(int, int)> go = [&](int i, int off) {
		if (i == len) {
			for (auto& gs : growth_strings(off)) {
				Word w;
				for (auto& v : cur)
					w.push_back(
					    map_atoms(v, [&](Atom a) { return (Atom)gs[a]; }));
				out.push_back(std::move(w));
			}
			return;
		}
		for (const Value& sk : sks) {
			size_t m = least_support(sk).size();
			cur.push_back(map_atoms(sk, [&](Atom a) { return a + off; }));
			go(i + 1, off + (int)m);
			cur.pop_back();
		}
	};
	go(0, 0);
	return out;
}

// ---------------------------------------------------------------- sampling

Value random_value(const SortP& s, const std::vector<Atom>& pool,
                   std::mt19937_64& rng, int max_list_len) {
	switch (s->kind) {
	case Sort::Atoms: {
		if (pool.empty()) throw Error("BadSample", "empty atom pool");
		return va(pool[rng() % pool.size()]);
	}
	case Sort::Unit: return vu(s->name);
	case Sort::Prod:
		return vp(random_value(s->left, pool, rng, max_list_len),
		          random_value(s->right, pool, rng, max_list_len));
	case Sort::Sum: {
		int side = (int)(rng() % 2);
		return vin(side, random_value(side == 0 ? s->left : s->right, pool,
		                              rng, max_list_len));
	}
	case Sort::List: {
		int n = (int)(rng() % (max_list_len + 1));
		std::vector<Value> elems;
		for (int i = 0; i < n; i++)
			elems.push_back(random_value(
			    s->left, pool, rng, std::max(0, max_list_len - 1)));
		return vl(std::move(elems));
	}
	}
	throw Error("BadSample", "unreachable");
}

Word random_word(const SortP& s, int len, const std::vector<Atom>& pool,
                 std::mt19937_64& rng) {
	Word w;
	for (int i = 0; i < len; i++) w.push_back(random_value(s, pool, rng));
	return w;
}

Perm random_perm(const std::vector<Atom>& atoms, std::mt19937_64& rng) {
	std::vector<Atom> dom;
	for (Atom a : atoms)
		if (std::find(dom.begin(), dom.end(), a) == dom.end())
			dom.push_back(a);
	Atom fresh = 0;
	for (Atom a : dom) fresh = std::max(fresh, a + 1);
	dom.push_back(fresh);
	dom.push_back(fresh + 1);
	std::vector<Atom> img = dom;
	std::shuffle(img.begin(), img.end(), rng);
	std::vector<std::pair<Atom, Atom>> ps;
	for (size_t i = 0; i < dom.size(); i++) ps.push_back({dom[i], img[i]});
	return Perm::of_pairs(ps);
}

EquivarianceReport check_equivariance(
    const std::function<Value(const Value&)>& f, const SortP& dom,
    int samples, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::vector<Atom> pool = {1, 2, 3, 4, 5};
	for (int i = 0; i < samples; i++) {
		Value v = random_value(dom, pool, rng);
		Perm p = random_perm(least_support(v), rng);
		Value lhs = f(apply_perm(p, v));
		Value rhs = apply_perm(p, f(v));
		if (!(lhs == rhs)) {
			EquivarianceReport r;
			r.ok = false;
			r.witness = v;
			r.perm = p;
			r.detail = "f(pi(x)) = " + show_value(lhs) +
			           " but pi(f(x)) = " + show_value(rhs);
			return r;
		}
	}
	return {};
}

EquivarianceReport check_equivariance_word(
    const std::function<Word(const Word&)>& f, const SortP& dom,
    int samples, int max_len, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::vector<Atom> pool = {1, 2, 3, 4, 5};
	for (int i = 0; i < samples; i++) {
		int len = (int)(rng() % (max_len + 1));
		Word w = random_word(dom, len, pool, rng);
		Perm p = random_perm(least_support(w), rng);
		Word lhs = f(apply_perm(p, w));
		Word rhs = apply_perm(p, f(w));
		if (lhs != rhs) {
			EquivarianceReport r;
			r.ok = false;
			r.witness = vl(w);
			r.perm = p;
			r.detail = "f(pi(w)) = " + show_word(lhs) +
			           " but pi(f(w)) = " + show_word(rhs);
			return r;
		}
	}
	return {};
}

}  // namespace dw
