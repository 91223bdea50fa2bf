#pragma once

// Streaming string transducers with atoms: a one-way single-use machine
// skeleton whose output actions are replaced by writes into concatenation-only
// string registers.  Includes the copyful (multiple-use) variant, register
// forests, post-composition with the letter-by-letter primes, and the
// adjacency invariant separating the copyful model.

#include "dw/primes.hpp"

namespace dw {

struct StringAction {
	enum Tag {
		SetLetter,  // dst := fn(atom registers), one output letter
		SetWord,    // dst := fn(atom registers), a bounded output word
		Concat,     // dst := a · b
	} tag = Concat;
	std::string dst;
	PatternFn fn;                        // SetLetter/SetWord
	std::vector<std::string> atom_regs;  // SetLetter/SetWord sources
	std::string a, b;                    // Concat sources, distinct names
};

struct SSTBranch {
	std::string state;
	std::vector<StringAction> strings;  // performed first, in order
	Action action;  // Store / MoveRight / Accept / Reject / Nop
};

struct SSTTransition {
	Question question;
	SSTBranch yes, no;
};

struct SSTMachine {
	SortP input_sort, output_sort;
	std::vector<std::string> states;
	std::string initial;
	std::vector<std::string> registers;  // atom registers
	std::vector<std::string> string_registers;
	std::string output_register;
	std::map<std::string, SSTTransition> delta;
	bool single_use_strings = true;  // false = copyful (multiple-use)

	SortP ext_letter_sort() const;       // input + {left end, right end}
	SortP string_fn_dom(int k) const;    // domain of a k-register write
};

std::vector<std::string> validate_sst(const SSTMachine& m);

// Accepted output = contents of the output register at the accept action.
// Single-use semantics: SetLetter/SetWord reset their atom registers and
// reject on an undefined one; Concat reads A,B, resets both to the empty
// string, then writes the result.  Copyful mode skips all resets.
RunResult eval_sst(const SSTMachine& m, const Word& w);

struct ForestNode {
	std::string reg;             // register written by the action
	int step = 0;                // run step of the action
	Word letters;                // leaf payload (SetLetter/SetWord)
	int left = -1, right = -1;   // Concat children (-1 = empty source)
};

struct RegisterForest {
	std::vector<ForestNode> nodes;  // in run order; children precede parents
	int root = -1;  // last action on the output register (-1 = empty output)

	// depth-first left-to-right reading of the leaf labels under the root;
	// reproduces the run's output
	Word dfs() const;
};

RegisterForest register_forest(const SSTMachine& m, const Word& w);

// true iff at most 2k distinct letters occur adjacent to an occurrence of
// `last` in `output`
bool adjacency_letter_check(const Word& output, const Value& last, int k);

// machine computing eval_prime(g, eval_sst(m, ·)); supported primes:
// letter/word homomorphisms, map reverse, map duplicate, atom propagation,
// group transducers, and the flip-flop
SSTMachine post_compose_prime(const SSTMachine& m, const PrimeFn& g);

nlohmann::json sst_to_json(const SSTMachine& m);
SSTMachine sst_from_json(const nlohmann::json& j);

// ------------------------------------------------------------ fixtures

// reverses every separator-free block (registers A, B per the A := aA idiom)
SSTMachine map_reverse_sst();
// duplicates every separator-free block (two copies of the block register)
SSTMachine map_duplicate_sst();
// copies the input unchanged; works for any input sort with at most one atom
// per letter
SSTMachine identity_sst(const SortP& sigma);
// writes the input reversed; same letter support as identity_sst
SSTMachine reverse_sst(const SortP& sigma);
// copyful machine doubling its register on every letter after the first
SSTMachine copyful_doubler();

}  // namespace dw
