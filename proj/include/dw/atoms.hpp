#pragma once

// Atoms, polynomial orbit-finite sorts and their values, finite atom
// permutations, equality types, and pattern functions (the finitely
// represented equivariant functions used by all machine models).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dw {

struct Error : std::runtime_error {
	std::string kind;
	Error(std::string k, const std::string& msg)
	    : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

using Atom = std::uint64_t;

// ---------------------------------------------------------------- sorts

class Sort;
using SortP = std::shared_ptr<const Sort>;

class Sort {
public:
	enum Kind { Atoms, Unit, Prod, Sum, List };
	Kind kind;
	std::string name;   // Unit only
	SortP left, right;  // Prod/Sum children; List element in `left`
};

SortP atom_sort();
SortP unit_sort(const std::string& name);
SortP prod_sort(SortP a, SortP b);
SortP sum_sort(SortP a, SortP b);
SortP list_sort(SortP elem);

bool same_sort(const SortP& a, const SortP& b);
bool has_list(const SortP& s);
// max number of atom leaves of any element; undefined for list sorts
int atom_dim(const SortP& s);

std::string show_sort(const SortP& s);
SortP parse_sort(const std::string& text);

// ---------------------------------------------------------------- values

struct Value {
	enum Kind { AtomV, UnitV, PairV, InjV, ListV };
	Kind kind = UnitV;
	Atom atom = 0;
	std::string name;         // UnitV
	int side = 0;             // InjV: 0 = L, 1 = R
	std::vector<Value> kids;  // PairV: 2, InjV: 1, ListV: any

	bool operator==(const Value& o) const;
	bool operator<(const Value& o) const;  // structural; for map keys only
};

using Word = std::vector<Value>;

Value va(Atom a);
Value vu(const std::string& name);
Value vp(Value a, Value b);
Value vin(int side, Value v);
Value vl(std::vector<Value> elems);

bool typechecks(const Value& v, const SortP& s);
std::string show_value(const Value& v);
Value parse_value(const std::string& text);

// parse/print a comma separated list of letters
std::string show_word(const Word& w);
Word parse_word(const std::string& text);

// lift a value written without explicit injections into a sum sort, trying
// the left branch first; returns nothing if no lifting typechecks
std::optional<Value> coerce(const Value& v, const SortP& s);
// drop injection wrappers for display
Value flatten(const Value& v);
std::string show_word_flat(const Word& w);

void collect_atoms(const Value& v, std::vector<Atom>& out);  // leaf order
std::vector<Atom> least_support(const Value& v);
std::vector<Atom> least_support(const Word& w);
Value map_atoms(const Value& v, const std::function<Atom(Atom)>& f);

// ------------------------------------------------------------ permutations

// finite partial bijection on atoms, identity outside its domain
class Perm {
public:
	Perm() = default;
	static Perm transposition(Atom a, Atom b);
	static Perm of_pairs(const std::vector<std::pair<Atom, Atom>>& ps);

	Atom operator()(Atom a) const;
	Perm then(const Perm& next) const;  // apply *this first, then next
	Perm inverse() const;
	const std::map<Atom, Atom>& pairs() const { return fwd_; }
	std::string show() const;

private:
	std::map<Atom, Atom> fwd_;
};

Value apply_perm(const Perm& p, const Value& v);
Word apply_perm(const Perm& p, const Word& w);

// --------------------------------------------------------- equality types

// canonical orbit representative: atoms relabelled 0,1,... in order of
// first occurrence; two values are in the same orbit iff equal canon forms
Value canonical_form(const Value& v);
Word canonical_form(const Word& w);

struct EqType {
	Value canon;
	bool operator==(const EqType& o) const { return canon == o.canon; }
	bool operator<(const EqType& o) const { return canon < o.canon; }
};
EqType equality_type(const Value& v);

// ------------------------------------------------------- pattern functions

// A pattern function is given by one case per equality type of the domain:
// the guard is the canonical representative of the orbit, and the template
// is a value of the codomain whose atom leaves are indices into the guard's
// distinct atoms (in first-occurrence order).
struct PatternCase {
	Value guard;
	Value tmpl;
};

class PatternFn {
public:
	SortP dom, cod;
	std::vector<PatternCase> cases;

	// checks guards are canonical, pairwise distinct and cover every orbit
	// of dom; an atomless `otherwise` template may fill unlisted orbits
	static PatternFn make(SortP dom, SortP cod, std::vector<PatternCase> cs,
	                      const std::optional<Value>& otherwise = {});

	Value operator()(const Value& v) const;
	const PatternCase& case_for(const Value& v) const;
};

// single-case helpers for machine construction code
PatternFn const_fn(SortP dom, SortP cod, const Value& out);

// symbolic composition f∘g, tabulated over the orbits of g's domain
PatternFn compose_fn(const PatternFn& f, const PatternFn& g);

// ------------------------------------------------------------- enumeration

// all shapes of the sort with atom leaves labelled 0..m-1 in leaf order
std::vector<Value> sort_skeletons(const SortP& s);
// canonical set partitions of {0..m-1} as restricted growth strings
std::vector<std::vector<int>> growth_strings(int m);
// one value per orbit of the sort, in canonical form
std::vector<Value> orbit_reps(const SortP& s);
// one word per orbit of s^len, in canonical form
std::vector<Word> canonical_words(const SortP& s, int len);

// ---------------------------------------------------------------- sampling

Value random_value(const SortP& s, const std::vector<Atom>& pool,
                   std::mt19937_64& rng, int max_list_len = 4);
Word random_word(const SortP& s, int len, const std::vector<Atom>& pool,
                 std::mt19937_64& rng);
// random permutation moving the given atoms (and a few fresh ones)
Perm random_perm(const std::vector<Atom>& atoms, std::mt19937_64& rng);

struct EquivarianceReport {
	bool ok = true;
	Value witness;
	Perm perm;
	std::string detail;
};
EquivarianceReport check_equivariance(
    const std::function<Value(const Value&)>& f, const SortP& dom,
    int samples, std::uint64_t seed);
// same, for word-to-word functions
EquivarianceReport check_equivariance_word(
    const std::function<Word(const Word&)>& f, const SortP& dom,
    int samples, int max_len, std::uint64_t seed);

}  // namespace dw
