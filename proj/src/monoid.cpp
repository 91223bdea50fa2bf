#include "dw/monoid.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace dw {

bool ProfileKey::operator<(const ProfileKey& o) const {
	return std::tie(state, val, side) < std::tie(o.state, o.val, o.side);
}
bool ProfileKey::operator==(const ProfileKey& o) const {
	return state == o.state && val == o.val && side == o.side;
}
bool ProfileResult::operator==(const ProfileResult& o) const {
	return tag == o.tag && state == o.state && val == o.val && side == o.side;
}

Atom ShepherdsonProfile::fresh_atom(int i) const {
	Atom base = 1;
	for (Atom a : word_atoms) base = std::max(base, a + 1);
	return base + (Atom)i;
}

// ------------------------------------------------------- fragment simulation

namespace {

// runs the machine inside a fixed word fragment until it accepts, loops,
// rejects (folded into loop), or steps off either end of the fragment
struct FragSim {
	const TwoWaySUT& m;
	const Word& w;  // extended letters
	std::map<std::string, int> reg_index;

	explicit FragSim(const TwoWaySUT& mm, const Word& ww) : m(mm), w(ww) {
		for (int i = 0; i < (int)m.registers.size(); i++)
			reg_index[m.registers[i]] = i;
	}

	static ProfileResult accept() {
		ProfileResult r;
		r.tag = ProfileResult::AcceptP;
		return r;
	}
	static ProfileResult loop() {
		ProfileResult r;
		r.tag = ProfileResult::LoopP;
		return r;
	}
	static ProfileResult exit(std::string q, RegTuple val, int side) {
		ProfileResult r;
		r.tag = ProfileResult::ExitP;
		r.state = std::move(q);
		r.val = std::move(val);
		r.side = side;
		return r;
	}

	ProfileResult go(std::string state, RegTuple val, int entry_side) const {
		int n = (int)w.size();
		if (n == 0) return exit(std::move(state), std::move(val), 1 - entry_side);
		int pos = entry_side == 0 ? 1 : n;
		std::set<std::string> seen;
		while (true) {
			std::string key = state + "@" + std::to_string(pos);
			for (auto& v : val)
				key += "|" + (v ? std::to_string(*v) : std::string("_"));
			if (!seen.insert(key).second) return loop();
			auto it = m.delta.find(state);
			if (it == m.delta.end()) return loop();
			const Transition& t = it->second;

			bool answer;
			if (t.question.tag == Question::LetterPred) {
				answer = flatten(t.question.pred(w[pos - 1])).name == "yes";
			} else {
				auto& c1 = val[reg_index.at(t.question.r1)];
				auto& c2 = val[reg_index.at(t.question.r2)];
				auto v1 = c1, v2 = c2;
				if (m.single_use) c1 = c2 = std::nullopt;
				if (!v1 || !v2) return loop();  // defined reject behavior
				answer = *v1 == *v2;
			}

			const Branch& b = answer ? t.yes : t.no;
			const Action& a = b.action;
			switch (a.tag) {
			case Action::Store: {
				Value r = a.fn(w[pos - 1]);
				val[reg_index.at(a.reg)] =
				    r.side == 0 ? std::optional<Atom>(r.kids[0].atom)
				                : std::nullopt;
				break;
			}
			case Action::Output:
			case Action::OutputMove: {
				bool undef = false;
				for (auto& r : a.regs) {
					auto& c = val[reg_index.at(r)];
					if (!c) undef = true;
					if (m.single_use) c = std::nullopt;
				}
				if (undef) return loop();
				if (a.tag == Action::OutputMove && ++pos > n)
					return exit(b.state, std::move(val), 1);
				break;
			}
			case Action::MoveLeft:
				if (--pos < 1) return exit(b.state, std::move(val), 0);
				break;
			case Action::MoveRight:
				if (++pos > n) return exit(b.state, std::move(val), 1);
				break;
			case Action::Accept: return accept();
			case Action::Reject: return loop();
			case Action::Nop: break;
			}
			state = b.state;
		}
	}
};

void enum_vals(int reg, int k, const std::vector<Atom>& watoms, Atom base,
               int fresh_used, RegTuple& cur, std::vector<RegTuple>& out) {
	if (reg == k) {
		out.push_back(cur);
		return;
	}
	cur[reg] = std::nullopt;
	enum_vals(reg + 1, k, watoms, base, fresh_used, cur, out);
	for (Atom a : watoms) {
		cur[reg] = a;
		enum_vals(reg + 1, k, watoms, base, fresh_used, cur, out);
	}
	for (int j = 0; j <= fresh_used && j < k; j++) {
		cur[reg] = base + (Atom)j;
		enum_vals(reg + 1, k, watoms, base,
		          std::max(fresh_used, j + 1), cur, out);
	}
	cur[reg] = std::nullopt;
}

std::vector<RegTuple> canonical_valuations(int k,
                                           const std::vector<Atom>& watoms,
                                           Atom base) {
	std::vector<RegTuple> out;
	RegTuple cur(k);
	enum_vals(0, k, watoms, base, 0, cur, out);
	return out;
}

std::vector<Atom> atoms_of_word(const Word& w) {
	std::vector<Atom> raw, out;
	for (auto& l : w) collect_atoms(l, raw);
	std::set<Atom> seen;
	for (Atom a : raw)
		if (seen.insert(a).second) out.push_back(a);
	return out;
}

}  // namespace

// ------------------------------------------------------------------ profiles

ProfileResult ShepherdsonProfile::at(const std::string& state,
                                     const RegTuple& val, int side) const {
	std::set<Atom> watoms(word_atoms.begin(), word_atoms.end());
	std::map<Atom, Atom> ren, inv;
	RegTuple key_val = val;
	for (auto& cell : key_val) {
		if (!cell || watoms.count(*cell)) continue;
		auto it = ren.find(*cell);
		if (it == ren.end()) {
			Atom f = fresh_atom((int)ren.size());
			it = ren.emplace(*cell, f).first;
			inv[f] = *cell;
		}
		cell = it->second;
	}
	auto it = table.find({state, key_val, side});
	if (it == table.end())
		throw Error("ProfileKey", "no table entry for state '" + state + "'");
	ProfileResult r = it->second;
	for (auto& cell : r.val)
		if (cell) {
			auto f = inv.find(*cell);
			if (f != inv.end()) cell = f->second;
		}
	return r;
}

ShepherdsonProfile profile_of(const TwoWaySUT& m, const Word& w) {
	SortP ext = m.ext_letter_sort();
	ShepherdsonProfile p;
	p.machine = std::make_shared<const TwoWaySUT>(m);
	for (auto& l : w) {
		if (typechecks(l, ext))
			p.word.push_back(l);
		else if (typechecks(l, m.input_sort))
			p.word.push_back(m.kind == Kind::Mealy ? l : ext_of_letter(l));
		else
			throw Error("SortMismatch", "letter " + show_value(l) +
			                                " does not fit the machine");
	}
	p.word_atoms = atoms_of_word(p.word);

	FragSim sim(m, p.word);
	int k = (int)m.registers.size();
	auto vals = canonical_valuations(k, p.word_atoms, p.fresh_atom(0));
	for (auto& q : m.states)
		for (int side : {0, 1})
			for (auto& v : vals)
				p.table[{q, v, side}] = sim.go(q, v, side);
	return p;
}

ShepherdsonProfile compose_profiles(const ShepherdsonProfile& a,
                                    const ShepherdsonProfile& b) {
	if (a.machine != b.machine &&
	    machine_to_json(*a.machine) != machine_to_json(*b.machine))
		throw Error("MachineMismatch",
		            "profiles were built from different machines");
	const TwoWaySUT& m = *a.machine;
	ShepherdsonProfile c;
	c.machine = a.machine;
	c.word = a.word;
	c.word.insert(c.word.end(), b.word.begin(), b.word.end());
	c.word_atoms = atoms_of_word(c.word);

	int k = (int)m.registers.size();
	auto vals = canonical_valuations(k, c.word_atoms, c.fresh_atom(0));
	for (auto& q : m.states) {
		for (int side : {0, 1}) {
			for (auto& v : vals) {
				// walk the boundary between the two parts
				int part = side;  // 0 = inside a, 1 = inside b
				std::string state = q;
				RegTuple val = v;
				int entry = side;
				std::set<std::string> crossings;
				ProfileResult res;
				while (true) {
					std::string ck = std::to_string(part) + "/" + state +
					                 "/" + std::to_string(entry);
					for (auto& cell : val)
						ck += "|" + (cell ? std::to_string(*cell)
						                  : std::string("_"));
					if (!crossings.insert(ck).second) {
						res = FragSim::loop();
						break;
					}
					res = (part == 0 ? a : b).at(state, val, entry);
					if (res.tag != ProfileResult::ExitP) break;
					if (part == 0 && res.side == 1) {
						part = 1;
						entry = 0;
					} else if (part == 1 && res.side == 0) {
						part = 0;
						entry = 1;
					} else {
						break;  // left the combined word
					}
					state = res.state;
					val = res.val;
				}
				c.table[{q, v, side}] = res;
			}
		}
	}
	return c;
}

bool accepts_via_profile(const TwoWaySUT& m, const Word& w) {
	if (m.kind != Kind::Automaton1W && m.kind != Kind::Automaton2W)
		throw Error("KindMismatch",
		            "profile acceptance needs an automaton kind");
	Word ew;
	ew.push_back(ext_lend());
	for (auto& l : w) ew.push_back(ext_of_letter(l));
	ew.push_back(ext_rend());
	ShepherdsonProfile p = profile_of(m, ew);
	RegTuple empty(m.registers.size());
	return p.at(m.initial, empty, 0).tag == ProfileResult::AcceptP;
}

ShepherdsonProfile transport_profile(const ShepherdsonProfile& p,
                                     const Perm& perm) {
	const TwoWaySUT& m = *p.machine;
	Perm back = perm.inverse();
	ShepherdsonProfile t;
	t.machine = p.machine;
	t.word = apply_perm(perm, p.word);
	t.word_atoms = atoms_of_word(t.word);

	auto move_val = [](const Perm& pr, RegTuple v) {
		for (auto& cell : v)
			if (cell) cell = pr(*cell);
		return v;
	};
	int k = (int)m.registers.size();
	auto vals = canonical_valuations(k, t.word_atoms, t.fresh_atom(0));
	for (auto& q : m.states)
		for (int side : {0, 1})
			for (auto& v : vals) {
				ProfileResult r = p.at(q, move_val(back, v), side);
				r.val = move_val(perm, r.val);
				t.table[{q, v, side}] = r;
			}
	return t;
}

std::vector<Atom> minimal_support(const ShepherdsonProfile& p) {
	int k = (int)p.machine->registers.size();
	Atom spare = p.fresh_atom(k + 1);
	std::vector<Atom> out;
	for (Atom a : p.word_atoms) {
		Perm t = Perm::transposition(a, spare);
		auto move_val = [&](RegTuple v) {
			for (auto& cell : v)
				if (cell) cell = t(*cell);
			return v;
		};
		bool fixed = true;
		for (auto& [key, res] : p.table) {
			// the profile is fixed by the swap iff f(t.k) = t.f(k)
			ProfileResult lhs = p.at(key.state, move_val(key.val), key.side);
			ProfileResult rhs = res;
			rhs.val = move_val(rhs.val);
			if (!(lhs == rhs)) {
				fixed = false;
				break;
			}
		}
		if (!fixed) out.push_back(a);
	}
	return out;
}

long long support_bound(const TwoWaySUT& m) {
	return 2LL * (long long)m.states.size()
	       * (1LL << ((long long)m.registers.size() + 1));
}

nlohmann::json profile_to_json(const ShepherdsonProfile& p) {
	SortP ext = p.machine->ext_letter_sort();
	auto val_json = [](const RegTuple& v) {
		nlohmann::json j = nlohmann::json::array();
		for (auto& cell : v)
			if (cell)
				j.push_back(*cell);
			else
				j.push_back(nullptr);
		return j;
	};
	nlohmann::json rows = nlohmann::json::array();
	for (auto& [key, res] : p.table) {
		nlohmann::json r = {{"state", key.state},
		                    {"val", val_json(key.val)},
		                    {"side", key.side == 0 ? "L" : "R"}};
		switch (res.tag) {
		case ProfileResult::AcceptP: r["result"] = {{"tag", "accept"}}; break;
		case ProfileResult::LoopP: r["result"] = {{"tag", "loop"}}; break;
		case ProfileResult::ExitP:
			r["result"] = {{"tag", "exit"},
			               {"state", res.state},
			               {"val", val_json(res.val)},
			               {"side", res.side == 0 ? "L" : "R"}};
			break;
		}
		rows.push_back(std::move(r));
	}
	return {{"word", show_word_for_sort(p.word, ext)},
	        {"atoms", p.word_atoms},
	        {"rows", std::move(rows)}};
}

}  // namespace dw
