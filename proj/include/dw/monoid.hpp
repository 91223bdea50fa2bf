#pragma once

// Shepherdson profiles of two-way single-use machines on concrete words:
// boundary-behavior tables, their monoid product, language recognition
// through profiles, and least-support analysis.

#include "dw/machines.hpp"

namespace dw {

// register contents by machine register order; nullopt is an undefined cell
using RegTuple = std::vector<std::optional<Atom>>;

struct ProfileKey {
	std::string state;
	RegTuple val;
	int side = 0;  // 0 = enter from the left, 1 = from the right
	bool operator<(const ProfileKey& o) const;
	bool operator==(const ProfileKey& o) const;
};

struct ProfileResult {
	enum Tag { AcceptP, LoopP, ExitP } tag = LoopP;
	std::string state;  // ExitP only
	RegTuple val;
	int side = 0;  // exit side
	bool operator==(const ProfileResult& o) const;
};

// The boundary behavior of a machine on one word: entry (state, valuation,
// side) to accept/loop/exit. Keys range over canonical entry valuations:
// each register holds bot, a word atom, or a fresh atom assigned in
// first-occurrence order; exit valuations use word and entry atoms only.
struct ShepherdsonProfile {
	std::shared_ptr<const TwoWaySUT> machine;
	Word word;                    // letters of the extended letter sort
	std::vector<Atom> word_atoms; // first-occurrence order
	std::map<ProfileKey, ProfileResult> table;

	Atom fresh_atom(int i) const;
	// evaluate at an arbitrary valuation: atoms outside the word's are
	// renamed to canonical fresh representatives before the lookup and
	// back after (justified by equivariance)
	ProfileResult at(const std::string& state, const RegTuple& val,
	                 int side) const;
	bool operator==(const ShepherdsonProfile& o) const {
		return word == o.word && table == o.table;
	}
};

// letters may be given over the input sort or the extended letter sort
ShepherdsonProfile profile_of(const TwoWaySUT& m, const Word& w);

// the monoid product: boundary simulation between the two tables, with
// cycle detection on repeated crossing configurations
ShepherdsonProfile compose_profiles(const ShepherdsonProfile& a,
                                    const ShepherdsonProfile& b);

// membership through the profile of the endmarked word
bool accepts_via_profile(const TwoWaySUT& m, const Word& w);

// the profile transported along an atom permutation
ShepherdsonProfile transport_profile(const ShepherdsonProfile& p,
                                     const Perm& perm);

// greedy least-support computation: a word atom is dropped when swapping
// it with a fresh atom leaves the profile unchanged as a function
std::vector<Atom> minimal_support(const ShepherdsonProfile& p);

// 2|Q| * 2^(k+1): no single-use machine's profile needs more atoms
long long support_bound(const TwoWaySUT& m);

nlohmann::json profile_to_json(const ShepherdsonProfile& p);

}  // namespace dw
