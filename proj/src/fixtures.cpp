#include "dw/fixtures.hpp"

#include <algorithm>

#include "dw/build.hpp"

namespace dw {

MealySUT atom_propagation_mealy() {
	MachineBuilder b(Kind::Mealy, "A+unit(eps)+unit(down)", "A+unit(bot)");
	b.m.registers = {"r"};
	b.m.initial = "u";
	// u: register empty; d: register holds the most recent atom
	b.branch("u", {"#0"}, {"u_store", b.store("r")},
	         {"u", b.out_const("bot", true)});
	b.step("u_store", "d", b.out_const("bot", true));
	b.branch("d", {"down"}, {"u", b.out_reg("r", true)}, {"d_na", b.simple(Action::Nop)});
	b.branch("d_na", {"#0"}, {"d_store", b.store("r")},
	         {"d", b.out_const("bot", true)});
	b.step("d_store", "d", b.out_const("bot", true));
	return b.m;
}

TwoWaySUT first_letter_multiuse() {
	MachineBuilder b(Kind::Automaton1W, "A", "unit(nil)");
	b.m.registers = {"x", "y"};
	b.m.single_use = false;
	b.m.initial = "q0";
	b.step("q0", "q1", b.simple(Action::MoveRight));
	b.branch("q1", {"#0"}, {"q2", b.store("x")}, {"q1", b.simple(Action::Reject)});
	b.step("q2", "q3", b.simple(Action::MoveRight));
	b.branch("q3", {"#0"}, {"q4", b.store("y")}, {"q3", b.simple(Action::Reject)});
	b.regeq("q4", "x", "y", {"q4", b.simple(Action::Accept)},
	        {"q3", b.simple(Action::MoveRight)});
	return b.m;
}

TwoWaySUT three_letters_automaton() {
	// One register triple per remembered letter, plus a scratch register t.
	// The state remembers the recency order of the remembered letters; a
	// letter remembered at recency position p has copies p..3 unread, so
	// comparing against copy p and rewriting all three copies on a match
	// keeps every comparison defined.
	MachineBuilder b(Kind::Automaton1W, "A", "unit(nil)");
	const std::vector<std::string> roles = {"a", "b", "c"};
	for (auto& r : roles)
		for (int i = 1; i <= 3; i++)
			b.m.registers.push_back(r + std::to_string(i));
	b.m.registers.push_back("t");
	b.m.initial = "init";

	auto join = [](const std::vector<std::string>& v) {
		std::string s;
		for (auto& x : v) s += x;
		return s;
	};

	std::vector<std::vector<std::string>> orders = {{}};
	for (int k = 1; k <= 3; k++) {
		std::vector<std::vector<std::string>> next;
		std::vector<std::string> perm;
		std::function<void()> gen = [&]() {
			if ((int)perm.size() == k) {
				next.push_back(perm);
				return;
			}
			for (auto& r : roles)
				if (std::find(perm.begin(), perm.end(), r) == perm.end()) {
					perm.push_back(r);
					gen();
					perm.pop_back();
				}
		};
		gen();
		for (auto& o : next) orders.push_back(o);
	}

	b.step("init", "scan_", b.simple(Action::MoveRight));
	for (auto& order : orders) {
		int k = (int)order.size();
		std::string o = join(order);
		std::string scan = "scan_" + o;

		// end of chain: a letter matching none of the remembered ones
		std::string miss;
		if (k == 3) {
			miss = "rej_" + o;
			b.step(miss, miss, b.simple(Action::Reject));
		} else {
			// remember a new letter with three fresh copies
			std::string role = roles[0];
			for (auto& r : roles)
				if (std::find(order.begin(), order.end(), r) == order.end()) {
					role = r;
					break;
				}
			std::vector<std::string> norder = {role};
			for (auto& r : order) norder.push_back(r);
			std::string nw = "nw_" + o;
			b.step(nw + "_1", nw + "_2", b.store(role + "1"));
			b.step(nw + "_2", nw + "_3", b.store(role + "2"));
			b.step(nw + "_3", nw + "_mv", b.store(role + "3"));
			b.step(nw + "_mv", "scan_" + join(norder),
			       b.simple(Action::MoveRight));
			miss = nw + "_1";
		}

		// comparison chain, newest remembered letter first
		std::string entry = miss;
		if (k > 0) entry = "st_" + o + "_1";
		for (int i = 1; i <= k; i++) {
			std::string role = order[i - 1];
			std::vector<std::string> norder = {role};
			for (auto& r : order)
				if (r != role) norder.push_back(r);
			// on a match, rewrite all three copies and move the letter to
			// the front of the recency order
			std::string hit = "rf_" + o + "_" + std::to_string(i);
			b.step(hit + "_2", hit + "_3", b.store(role + "2"));
			b.step(hit + "_3", hit + "_mv", b.store(role + "3"));
			b.step(hit + "_mv", "scan_" + join(norder),
			       b.simple(Action::MoveRight));

			std::string st = "st_" + o + "_" + std::to_string(i);
			std::string cmp = "cmp_" + o + "_" + std::to_string(i);
			std::string next_cmp = i < k ? "st_" + o + "_" + std::to_string(i + 1)
			                             : miss;
			b.step(st, cmp, b.store("t"));
			b.regeq(cmp, "t", role + std::to_string(i),
			        {hit + "_2", b.store(role + "1")},
			        {next_cmp, b.simple(Action::Nop)});
		}

		b.branch(scan, {"#0"}, {entry, b.simple(Action::Nop)},
		         {scan, b.simple(Action::Accept)});
	}
	return b.m;
}

TwoWaySUT map_reverse_2way() {
	MachineBuilder b(Kind::TwoWay, "A+unit(sep)", "A+unit(sep)");
	b.m.registers = {"x"};
	b.m.initial = "init";
	b.step("init", "fwd", b.simple(Action::MoveRight));
	// fwd: scan right to the end of the current block
	b.branch("fwd", {"sep", "rend"}, {"back", b.simple(Action::MoveLeft)},
	         {"fwd", b.simple(Action::MoveRight)});
	// back: emit block letters right to left
	b.branch("back", {"#0"}, {"b1", b.store("x")},
	         {"fwd2", b.simple(Action::MoveRight)});
	b.step("b1", "b2", b.out_reg("x", false));
	b.step("b2", "back", b.simple(Action::MoveLeft));
	// fwd2: return to the end boundary and emit it
	b.branch("fwd2", {"#0"}, {"fwd2", b.simple(Action::MoveRight)},
	         {"bnd", b.simple(Action::Nop)});
	b.branch("bnd", {"sep"}, {"bnd2", b.out_const("sep", false)},
	         {"bnd", b.simple(Action::Accept)});
	b.step("bnd2", "fwd", b.simple(Action::MoveRight));
	return b.m;
}

TwoWaySUT first_last_automaton() {
	MachineBuilder b(Kind::Automaton2W, "A", "unit(nil)");
	b.m.registers = {"x", "y"};
	b.m.initial = "init";
	b.step("init", "s1", b.simple(Action::MoveRight));
	b.branch("s1", {"#0"}, {"s2", b.store("x")}, {"s1", b.simple(Action::Reject)});
	b.step("s2", "s3", b.simple(Action::MoveRight));
	b.branch("s3", {"#0"}, {"s3", b.simple(Action::MoveRight)},
	         {"s4", b.simple(Action::MoveLeft)});
	b.branch("s4", {"#0"}, {"s5", b.store("y")}, {"s4", b.simple(Action::Reject)});
	b.regeq("s5", "x", "y", {"s5", b.simple(Action::Accept)},
	        {"s5", b.simple(Action::Reject)});
	return b.m;
}

}  // namespace dw
