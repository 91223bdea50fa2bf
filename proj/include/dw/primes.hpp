#pragma once

// Prime word functions and their sequential/parallel composition pipelines,
// compilation of the length-preserving primes to single-use Mealy machines,
// and the Mealy sequential-composition product construction.

#include <memory>

#include "dw/machines.hpp"

namespace dw {

// finite group given by its multiplication table; element 0 is the identity
class Group {
public:
	static Group of_table(std::vector<std::vector<int>> table);
	static Group cyclic(int n);
	int op(int a, int b) const { return table_[a][b]; }
	int size() const { return (int)table_.size(); }
	int inverse(int a) const;
	// unit(0)+unit(1)+...; letters named by element index
	SortP letter_sort() const;
	Value letter(int g) const;
	int element(const Value& letter) const;
	const std::vector<std::vector<int>>& table() const { return table_; }

private:
	std::vector<std::vector<int>> table_;
};

struct PrimeFn {
	enum Tag {
		LpHom,            // letter-to-letter homomorphism
		Hom,              // letter-to-word homomorphism (bounded images)
		ClassicalMealy,   // atomless single-use Mealy machine
		AtomPropagation,  // A+eps+down -> A+bot
		GroupTransducer,  // i-th output = product of the first i letters
		FlipFlop,         // latch of the last non-1 letter, default a
		MapReverse,       // reverse every separator-free block
		MapDuplicate,     // duplicate every separator-free block
		AppendEndmark,    // w -> w rend
		ParWithId,        // inner applied to the left component
	} tag = AtomPropagation;

	PatternFn fn;  // LpHom: dom->cod; Hom: dom->list(cod)
	std::shared_ptr<TwoWaySUT> mealy;  // ClassicalMealy
	Group group;                       // GroupTransducer
	SortP sigma;                       // MapReverse/MapDuplicate/AppendEndmark
	std::shared_ptr<PrimeFn> inner;    // ParWithId
	SortP id_sort;                     // ParWithId

	SortP dom() const;
	SortP cod() const;
	bool length_preserving() const;
};

PrimeFn prime_lphom(PatternFn f);
PrimeFn prime_hom(PatternFn f);  // f.cod must be list(...)
PrimeFn prime_classical_mealy(TwoWaySUT m);
PrimeFn prime_atom_propagation();
PrimeFn prime_group(Group g);
PrimeFn prime_flipflop();
PrimeFn prime_map_reverse(SortP sigma);
PrimeFn prime_map_duplicate(SortP sigma);
PrimeFn prime_append_endmark(SortP sigma);
PrimeFn prime_par_with_id(PrimeFn inner, SortP id_sort);

// identity letter-to-letter homomorphism on the given sort
PatternFn identity_fn(const SortP& s);

Word eval_prime(const PrimeFn& p, const Word& w);

struct Pipeline {
	enum Tag { Prime, Seq, Par } tag = Prime;
	std::shared_ptr<PrimeFn> prime;
	std::vector<Pipeline> kids;  // Seq: applied left first; Par: zipped

	SortP dom() const;
	SortP cod() const;
};

Pipeline pipe_prime(PrimeFn p);
Pipeline pipe_seq(std::vector<Pipeline> kids);
Pipeline pipe_par(std::vector<Pipeline> kids);

Word eval_pipeline(const Pipeline& p, const Word& w);

// compile a length-preserving prime to a Mealy machine computing it
MealySUT as_mealy(const PrimeFn& p);

// product machine computing g after f, buffering at most stay_bound(g)
// pending output letters of f
MealySUT compose_mealy(const MealySUT& f, const MealySUT& g);

nlohmann::json prime_to_json(const PrimeFn& p);
PrimeFn prime_from_json(const nlohmann::json& j);
nlohmann::json pipeline_to_json(const Pipeline& p);
Pipeline pipeline_from_json(const nlohmann::json& j);

}  // namespace dw
