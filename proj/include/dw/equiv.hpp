#pragma once

// Cross-model comparison: a unified runner over every evaluatable model,
// orbit-complete bounded equivalence, seeded differential fuzzing, and
// deatomisation of atom values into strings over a finite alphabet.

#include "dw/reglist.hpp"
#include "dw/sst.hpp"

namespace dw {

struct RunnerOutcome {
	enum Tag { Out, Accept, Reject, Loop } tag = Out;
	Word out;  // Out only
	bool operator==(const RunnerOutcome& o) const {
		return tag == o.tag && out == o.out;
	}
	std::string show(const SortP& letter) const;
};

// tagged handle to any evaluatable model with word-in/word-out (or
// word-in/accept-reject) application
struct Runner {
	enum Tag { Machine, Pipe, Sst, Rlf } tag = Machine;
	std::shared_ptr<const TwoWaySUT> machine;
	std::shared_ptr<const Pipeline> pipeline;
	std::shared_ptr<const SSTMachine> sst;
	RlfP rlf;

	SortP dom() const;
	// letter sort of word outputs; null for acceptors
	SortP cod() const;
	bool is_acceptor() const;
	RunnerOutcome operator()(const Word& w) const;
};

Runner runner_machine(TwoWaySUT m);
Runner runner_pipeline(Pipeline p);
Runner runner_prime(PrimeFn p);
Runner runner_sst(SSTMachine m);
Runner runner_rlf(RlfP e);

struct EquivResult {
	bool equal = true;
	Word counterexample;  // meaningful when !equal
	RunnerOutcome left, right;
	int lengths_checked = 0;
	long long words_checked = 0;
};

// compares on every canonical word of each length up to max_len; by
// equivariance, agreement there means agreement on all words up to that
// length. This is a bounded check, not a decision procedure.
EquivResult bounded_equiv(const Runner& a, const Runner& b, int max_len);

// seeded random differential testing; deterministic given the seed
EquivResult fuzz(const Runner& a, const Runner& b, int trials, int max_len,
                 const std::vector<Atom>& pool, std::uint64_t seed);

// ------------------------------------------------------------ deatomisation

// atom -> repetition count n, encoding the atom as n diamonds and a stop
struct Deatomisation {
	std::map<Atom, int> reps;
	bool injective() const;
	// every atom maps to its own value as the repetition count
	static Deatomisation identity_for(const std::vector<Atom>& atoms);
};

std::string deatomise(const Deatomisation& d, const Value& v);
std::string deatomise(const Deatomisation& d, const Word& w);

// inverse of deatomise for injective maps, driven by the letter sort
Word parse_deatomised(const Deatomisation& d, const std::string& s,
                      const SortP& letter);

}  // namespace dw
