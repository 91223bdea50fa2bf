#include <set>

#include "dw/build.hpp"
#include "dw/sst.hpp"

// Post-composition: given a machine with string registers and a prime word
// function g over its output alphabet, build a machine of the same shape
// computing g of the output.  Each original string register is replaced by a
// fixed family of registers holding pieces of g applied to its contents, and
// the state additionally tracks a bounded summary per register (separator
// seen, group product, latched letter, ...) that decides how the pieces
// recombine on concatenation.

namespace dw {

namespace {

StringAction cc(const std::string& dst, const std::string& a,
                const std::string& b) {
	StringAction sa;
	sa.tag = StringAction::Concat;
	sa.dst = dst;
	sa.a = a;
	sa.b = b;
	return sa;
}

// dst := src, routed through the never-written empty register
StringAction mv(const std::string& dst, const std::string& src) {
	return cc(dst, src, "_z");
}

// dst := empty word (also the only way to drop a register's contents)
StringAction wipe(const std::string& dst, const SortP& out) {
	StringAction sa;
	sa.tag = StringAction::SetWord;
	sa.dst = dst;
	sa.fn = const_fn(unit_sort("nil"), list_sort(out), vl({}));
	return sa;
}

StringAction put_const(const std::string& dst, const SortP& out,
                       const std::string& lit) {
	StringAction sa;
	sa.tag = StringAction::SetLetter;
	sa.dst = dst;
	sa.fn = const_fn(unit_sort("nil"), out, parse_for_sort(lit, out));
	return sa;
}

// rewrite of a register write: same sources (so undefined-register rejection
// is preserved), letter mapped through `wrap`
StringAction routed(const std::string& dst, const StringAction& sa,
                    const PatternFn& wrap) {
	StringAction r;
	r.tag = StringAction::SetLetter;
	r.dst = dst;
	r.fn = compose_fn(wrap, sa.fn);
	r.atom_regs = sa.atom_regs;
	return r;
}

// the recombination rules need the shape of every written letter (separator
// or not, group element, ...) at construction time: all cases of the write
// must produce the same flattened shape, with atoms collapsed into one class
std::string letter_class(const PatternFn& fn) {
	std::string cls;
	for (auto& c : fn.cases) {
		Value f = flatten(c.tmpl);
		std::string k = f.kind == Value::AtomV ? "@atom" : f.name;
		if (cls.empty()) cls = k;
		else if (cls != k)
			throw Error("Unsupported",
			            "register write with a mixed letter shape");
	}
	if (cls.empty())
		throw Error("Unsupported", "register write with no cases");
	return cls;
}

struct Rules {
	SortP out;             // transformed output sort
	int init = 0;          // flag of an empty register
	bool duplicate_atoms = false;
	std::vector<std::string> extras;  // shared scratch string registers
	std::function<std::vector<std::string>(const std::string&)> derived;
	// overwrite X with the letter written by `sa`; actions + X's flag
	std::function<std::pair<std::vector<StringAction>, int>(
	    const std::string&, const StringAction&)> set;
	// dst := a · b given the source flags; actions + dst's flag
	std::function<std::pair<std::vector<StringAction>, int>(
	    const std::string&, const std::string&, const std::string&, int, int)>
	    concat;
	// move the recombined output of X into _out
	std::function<std::vector<StringAction>(const std::string&, int)> finish;
};

SSTMachine apply_rules(const SSTMachine& m, const Rules& R) {
	SSTMachine r;
	r.input_sort = m.input_sort;
	r.output_sort = R.out;
	r.registers = m.registers;
	if (R.duplicate_atoms)
		for (auto& reg : m.registers) r.registers.push_back(reg + "$d");
	for (auto& x : m.string_registers)
		for (auto& d : R.derived(x)) r.string_registers.push_back(d);
	for (auto& e : R.extras) r.string_registers.push_back(e);
	r.string_registers.push_back("_z");
	r.string_registers.push_back("_out");
	r.output_register = "_out";
	r.single_use_strings = m.single_use_strings;
	SortP ext = r.ext_letter_sort();

	std::map<std::string, int> sidx;
	for (size_t i = 0; i < m.string_registers.size(); i++)
		sidx[m.string_registers[i]] = (int)i;
	auto enc = [](const std::string& q, const std::vector<int>& fl) {
		std::string s = q + "#";
		for (int f : fl) s += std::to_string(f) + ".";
		return s;
	};

	std::vector<int> fl0(m.string_registers.size(), R.init);
	r.initial = enc(m.initial, fl0);
	std::set<std::string> done;
	std::vector<std::pair<std::string, std::vector<int>>> todo = {
	    {m.initial, fl0}};
	while (!todo.empty()) {
		auto [q, fl] = todo.back();
		todo.pop_back();
		std::string name = enc(q, fl);
		if (!done.insert(name).second) continue;
		auto it = m.delta.find(q);
		if (it == m.delta.end())
			throw Error("BadMachine", "state '" + q + "' has no transition");
		const SSTTransition& t = it->second;
		SSTTransition nt;
		nt.question = t.question;
		for (auto [src, dst, tag] :
		     {std::tuple<const SSTBranch*, SSTBranch*, const char*>{
		          &t.yes, &nt.yes, "y"},
		      {&t.no, &nt.no, "n"}}) {
			const SSTBranch& b = *src;
			SSTBranch& nb = *dst;
			std::vector<int> fl2 = fl;
			for (auto& sa : b.strings) {
				std::vector<StringAction> acts;
				int f;
				if (sa.tag == StringAction::SetLetter) {
					std::tie(acts, f) = R.set(sa.dst, sa);
				} else if (sa.tag == StringAction::Concat) {
					std::tie(acts, f) =
					    R.concat(sa.dst, sa.a, sa.b, fl2[sidx[sa.a]],
					             fl2[sidx[sa.b]]);
					if (m.single_use_strings) {
						fl2[sidx[sa.a]] = R.init;
						fl2[sidx[sa.b]] = R.init;
					}
				} else {
					throw Error("Unsupported",
					            "cannot post-compose over word writes");
				}
				for (auto& a : acts) nb.strings.push_back(std::move(a));
				fl2[sidx[sa.dst]] = f;
			}
			nb.action = b.action;
			if (b.action.tag == Action::Accept)
				for (auto& a : R.finish(m.output_register,
				                        fl2[sidx[m.output_register]]))
					nb.strings.push_back(std::move(a));
			std::string tname = enc(b.state, fl2);
			if (b.action.tag == Action::Store && R.duplicate_atoms) {
				// keep a second copy of the stored atom for duplicated writes
				std::string mid = name + tag + "$d";
				nb.state = mid;
				Action a2 = b.action;
				a2.reg += "$d";
				SSTTransition mt;
				mt.question.tag = Question::LetterPred;
				mt.question.pred = letter_pred(ext, {});
				mt.yes = {tname, {}, a2};
				mt.no = mt.yes;
				r.delta[mid] = std::move(mt);
				r.states.push_back(mid);
			} else {
				nb.state = tname;
			}
			if (!done.count(tname)) todo.push_back({b.state, fl2});
		}
		r.delta[name] = std::move(nt);
		r.states.push_back(name);
	}
	return r;
}

// -------------------------------------------------------------- map reverse

// register X splits as x1 sep u sep x3 (first and last separator); pieces:
// X$1 = reverse(x1), X$2 = sep · (blockwise reverse of u) · sep, X$3 =
// reverse(x3).  Without separators everything sits reversed in X$1.
Rules map_reverse_rules(const SSTMachine& m, bool su) {
	Rules R;
	R.out = m.output_sort;
	R.extras = {"_t1", "_t2", "_t3"};
	R.derived = [](const std::string& x) {
		return std::vector<std::string>{x + "$1", x + "$2", x + "$3"};
	};
	SortP out = R.out;
	R.set = [out](const std::string& x, const StringAction& sa)
	    -> std::pair<std::vector<StringAction>, int> {
		bool sep = letter_class(sa.fn) == "sep";
		StringAction w = sa;
		w.dst = sep ? x + "$2" : x + "$1";
		std::vector<StringAction> acts = {w, wipe(sep ? x + "$1" : x + "$2", out),
		                                  wipe(x + "$3", out)};
		return {acts, sep ? 1 : 0};
	};
	R.concat = [out](const std::string& a, const std::string& b,
	                 const std::string& c, int fb,
	                 int fc) -> std::pair<std::vector<StringAction>, int> {
		std::vector<StringAction> s;
		if (fb == 0 && fc == 0) {
			// reverse(b · c) = reverse(c) · reverse(b)
			s = {mv("_t1", c + "$1"), cc("_t1", "_t1", b + "$1"),
			     mv(a + "$1", "_t1"), wipe(a + "$2", out), wipe(a + "$3", out)};
			return {s, 0};
		}
		if (fb == 0) {
			s = {mv("_t1", c + "$1"), cc("_t1", "_t1", b + "$1"),
			     mv("_t2", c + "$2"), mv("_t3", c + "$3")};
		} else if (fc == 0) {
			s = {mv("_t1", b + "$1"), mv("_t2", b + "$2"), mv("_t3", c + "$1"),
			     cc("_t3", "_t3", b + "$3")};
		} else {
			// the last block of b and the first block of c merge
			s = {mv("_t1", b + "$1"), mv("_t2", b + "$2"),
			     cc("_t2", "_t2", c + "$1"), cc("_t2", "_t2", b + "$3"),
			     cc("_t2", "_t2", c + "$2"), mv("_t3", c + "$3")};
		}
		s.push_back(mv(a + "$1", "_t1"));
		s.push_back(mv(a + "$2", "_t2"));
		s.push_back(mv(a + "$3", "_t3"));
		return {s, 1};
	};
	R.finish = [](const std::string& x, int) {
		return std::vector<StringAction>{mv("_out", x + "$1"),
		                                 cc("_out", "_out", x + "$2"),
		                                 cc("_out", "_out", x + "$3")};
	};
	(void)su;
	return R;
}

// ------------------------------------------------------------ map duplicate

// same split as map reverse, but the outer blocks are kept in two copies
// (fed by two stores of each letter) so that a merged block can be written
// twice: X$1/X$1d = x1, X$2 = duplicated middle, X$3/X$3d = x3
Rules map_duplicate_rules(const SSTMachine& m, bool su) {
	Rules R;
	R.out = m.output_sort;
	R.duplicate_atoms = true;
	R.extras = {"_t1", "_u1", "_t2", "_t3", "_u3"};
	R.derived = [](const std::string& x) {
		return std::vector<std::string>{x + "$1", x + "$1d", x + "$2",
		                                x + "$3", x + "$3d"};
	};
	SortP out = R.out;
	R.set = [out](const std::string& x, const StringAction& sa)
	    -> std::pair<std::vector<StringAction>, int> {
		std::vector<StringAction> acts;
		bool sep = letter_class(sa.fn) == "sep";
		if (sep) {
			StringAction w = sa;
			w.dst = x + "$2";
			acts = {w, wipe(x + "$1", out), wipe(x + "$1d", out),
			        wipe(x + "$3", out), wipe(x + "$3d", out)};
			return {acts, 1};
		}
		StringAction w = sa, wd = sa;
		w.dst = x + "$1";
		wd.dst = x + "$1d";
		for (auto& reg : wd.atom_regs) reg += "$d";
		acts = {w, wd, wipe(x + "$2", out), wipe(x + "$3", out),
		        wipe(x + "$3d", out)};
		return {acts, 0};
	};
	R.concat = [out](const std::string& a, const std::string& b,
	                 const std::string& c, int fb,
	                 int fc) -> std::pair<std::vector<StringAction>, int> {
		std::vector<StringAction> s;
		if (fb == 0 && fc == 0) {
			s = {mv("_t1", b + "$1"),  cc("_t1", "_t1", c + "$1"),
			     mv("_u1", b + "$1d"), cc("_u1", "_u1", c + "$1d"),
			     mv(a + "$1", "_t1"),  mv(a + "$1d", "_u1"),
			     wipe(a + "$2", out),  wipe(a + "$3", out),
			     wipe(a + "$3d", out)};
			return {s, 0};
		}
		if (fb == 0) {
			s = {mv("_t1", b + "$1"),  cc("_t1", "_t1", c + "$1"),
			     mv("_u1", b + "$1d"), cc("_u1", "_u1", c + "$1d"),
			     mv("_t2", c + "$2"),  mv("_t3", c + "$3"),
			     mv("_u3", c + "$3d")};
		} else if (fc == 0) {
			s = {mv("_t1", b + "$1"),  mv("_u1", b + "$1d"),
			     mv("_t2", b + "$2"),  mv("_t3", b + "$3"),
			     cc("_t3", "_t3", c + "$1"), mv("_u3", b + "$3d"),
			     cc("_u3", "_u3", c + "$1d")};
		} else {
			// merged block written twice from the two kept copies
			s = {mv("_t1", b + "$1"),       mv("_u1", b + "$1d"),
			     mv("_t2", b + "$2"),       cc("_t2", "_t2", b + "$3"),
			     cc("_t2", "_t2", c + "$1"), cc("_t2", "_t2", b + "$3d"),
			     cc("_t2", "_t2", c + "$1d"), cc("_t2", "_t2", c + "$2"),
			     mv("_t3", c + "$3"),       mv("_u3", c + "$3d")};
		}
		s.push_back(mv(a + "$1", "_t1"));
		s.push_back(mv(a + "$1d", "_u1"));
		s.push_back(mv(a + "$2", "_t2"));
		s.push_back(mv(a + "$3", "_t3"));
		s.push_back(mv(a + "$3d", "_u3"));
		return {s, 1};
	};
	R.finish = [](const std::string& x, int) {
		return std::vector<StringAction>{
		    mv("_out", x + "$1"), cc("_out", "_out", x + "$1d"),
		    cc("_out", "_out", x + "$2"), cc("_out", "_out", x + "$3"),
		    cc("_out", "_out", x + "$3d")};
	};
	(void)su;
	return R;
}

// --------------------------------------------------------- atom propagation

// flag bits: 4 = register contains a propagation point (down letter),
// 2 = an atom occurs before the first one, 1 = an atom occurs after the
// last one.  X$1 = bots for the prefix before the first down letter, X$2 =
// resolved output after it, X$h / X$t = those boundary atoms as letters.
// The first down letter's own output stays pending until the register is
// concatenated behind something (or emitted).
Rules atom_propagation_rules(const SSTMachine& m, bool su) {
	Rules R;
	R.out = parse_sort("A+unit(bot)");
	R.extras = {"_t1", "_t2", "_th", "_tt", "_m"};
	R.derived = [](const std::string& x) {
		return std::vector<std::string>{x + "$1", x + "$2", x + "$h",
		                                x + "$t"};
	};
	SortP in = m.output_sort, out = R.out;
	PatternFn to_bot = const_fn(in, out, parse_for_sort("bot", out));
	std::vector<PatternCase> ecs;
	for (const Value& rep : orbit_reps(in))
		ecs.push_back({rep, least_support(rep).empty()
		                        ? parse_for_sort("bot", out)
		                        : vin(0, va(0))});
	PatternFn embed = PatternFn::make(in, out, std::move(ecs));
	R.set = [out, to_bot, embed](const std::string& x, const StringAction& sa)
	    -> std::pair<std::vector<StringAction>, int> {
		std::string cls = letter_class(sa.fn);
		std::vector<StringAction> acts;
		if (cls == "@atom") {
			acts = {routed(x + "$t", sa, embed), put_const(x + "$1", out, "bot"),
			        wipe(x + "$2", out), wipe(x + "$h", out)};
			return {acts, 1};
		}
		if (cls == "eps") {
			acts = {routed(x + "$1", sa, to_bot), wipe(x + "$2", out),
			        wipe(x + "$h", out), wipe(x + "$t", out)};
			return {acts, 0};
		}
		if (cls != "down")
			throw Error("Unsupported", "unexpected letter '" + cls + "'");
		if (!sa.atom_regs.empty()) {
			// keep the undefined-register rejection, drop the value
			acts.push_back(routed("_m", sa, to_bot));
			acts.push_back(wipe("_m", out));
		}
		for (auto* suf : {"$1", "$2", "$h", "$t"})
			acts.push_back(wipe(x + suf, out));
		return {acts, 4};
	};
	R.concat = [out, su](const std::string& a, const std::string& b,
	                     const std::string& c, int fb,
	                     int fc) -> std::pair<std::vector<StringAction>, int> {
		bool db = fb & 4, hb = fb & 2, tb = fb & 1;
		bool dc = fc & 4, hc = fc & 2, tc = fc & 1;
		std::vector<StringAction> s;
		auto drop = [&](const std::string& reg) {
			if (su) s.push_back(wipe(reg, out));
		};
		int f;
		bool th_set = false, mid = false, mid_bot = false;
		if (!dc) {
			if (!db) {
				s = {mv("_t1", b + "$1"), cc("_t1", "_t1", c + "$1"),
				     wipe("_t2", out)};
				f = (tb || tc) ? 1 : 0;
			} else {
				s = {mv("_t1", b + "$1"), mv("_t2", b + "$2"),
				     cc("_t2", "_t2", c + "$1"), mv("_th", b + "$h")};
				th_set = true;
				f = 4 | (hb ? 2 : 0) | ((tb || tc) ? 1 : 0);
			}
			if (tc) {
				s.push_back(mv("_tt", c + "$t"));
				drop(b + "$t");
			} else {
				s.push_back(mv("_tt", b + "$t"));
			}
		} else if (!db) {
			s = {mv("_t1", b + "$1"), cc("_t1", "_t1", c + "$1"),
			     mv("_t2", c + "$2")};
			if (hc) {
				s.push_back(mv("_th", c + "$h"));
				th_set = true;
				drop(b + "$t");
			} else if (tb) {
				s.push_back(mv("_th", b + "$t"));
				th_set = true;
			}
			s.push_back(mv("_tt", c + "$t"));
			f = 4 | ((hc || tb) ? 2 : 0) | (tc ? 1 : 0);
		} else {
			// the pending output of c's first propagation point resolves to
			// the atom closest in front of it
			s = {mv("_t1", b + "$1"), mv("_th", b + "$h"),
			     mv("_t2", b + "$2"), cc("_t2", "_t2", c + "$1")};
			th_set = true;
			if (hc) {
				s.push_back(cc("_t2", "_t2", c + "$h"));
				drop(b + "$t");
			} else if (tb) {
				s.push_back(cc("_t2", "_t2", b + "$t"));
			} else {
				mid_bot = true;
				s.push_back(put_const("_m", out, "bot"));
				s.push_back(cc("_t2", "_t2", "_m"));
			}
			mid = true;
			s.push_back(cc("_t2", "_t2", c + "$2"));
			s.push_back(mv("_tt", c + "$t"));
			f = 4 | (hb ? 2 : 0) | (tc ? 1 : 0);
		}
		(void)mid;
		(void)mid_bot;
		s.push_back(mv(a + "$1", "_t1"));
		s.push_back(mv(a + "$2", "_t2"));
		if (th_set) s.push_back(mv(a + "$h", "_th"));
		else s.push_back(wipe(a + "$h", out));
		s.push_back(mv(a + "$t", "_tt"));
		return {s, f};
	};
	R.finish = [out](const std::string& x, int f) {
		std::vector<StringAction> s = {mv("_out", x + "$1")};
		if (f & 4) {
			if (f & 2) {
				s.push_back(cc("_out", "_out", x + "$h"));
			} else {
				s.push_back(put_const("_m", out, "bot"));
				s.push_back(cc("_out", "_out", "_m"));
			}
		}
		s.push_back(cc("_out", "_out", x + "$2"));
		s.push_back(wipe(x + "$t", out));
		return s;
	};
	return R;
}

// ---------------------------------------------------------- group transducer

// X$gq = output of the transducer on X entered with accumulated product q;
// the flag is the product of X's letters
Rules group_rules(const SSTMachine& m, const Group& g, bool su) {
	Rules R;
	R.out = g.letter_sort();
	int n = g.size();
	R.derived = [n](const std::string& x) {
		std::vector<std::string> d;
		for (int q = 0; q < n; q++) d.push_back(x + "$g" + std::to_string(q));
		return d;
	};
	for (int q = 0; q < n; q++) R.extras.push_back("_g" + std::to_string(q));
	SortP in = m.output_sort, out = R.out;
	R.set = [in, out, g, n](const std::string& x, const StringAction& sa)
	    -> std::pair<std::vector<StringAction>, int> {
		std::string cls = letter_class(sa.fn);
		int e;
		try {
			e = std::stoi(cls);
		} catch (const std::exception&) {
			e = -1;
		}
		if (e < 0 || e >= n)
			throw Error("Unsupported", "write is not a fixed group element");
		std::vector<StringAction> acts;
		for (int q = 0; q < n; q++) {
			Value l = g.letter(g.op(q, e));
			std::string dst = x + "$g" + std::to_string(q);
			if (q == 0)
				acts.push_back(routed(dst, sa, const_fn(in, out, l)));
			else
				acts.push_back(put_const(dst, out,
				                         show_for_sort(l, out)));
		}
		return {acts, e};
	};
	R.concat = [g, n](const std::string& a, const std::string& b,
	                  const std::string& c, int fb,
	                  int fc) -> std::pair<std::vector<StringAction>, int> {
		std::vector<StringAction> s;
		for (int q = 0; q < n; q++) {
			std::string t = "_g" + std::to_string(q);
			s.push_back(mv(t, b + "$g" + std::to_string(q)));
			s.push_back(cc(t, t, c + "$g" + std::to_string(g.op(q, fb))));
		}
		for (int q = 0; q < n; q++)
			s.push_back(mv(a + "$g" + std::to_string(q),
			               "_g" + std::to_string(q)));
		return {s, g.op(fb, fc)};
	};
	R.finish = [](const std::string& x, int) {
		return std::vector<StringAction>{mv("_out", x + "$g0")};
	};
	(void)su;
	return R;
}

// ------------------------------------------------------------------ flip-flop

// X$a / X$b = output on X entered in state a / b, up to and including the
// first latching letter; X$p = output after it; the flag is the last
// latching letter of X (0 = none, 1 = a, 2 = b)
Rules flipflop_rules(const SSTMachine& m, bool su) {
	Rules R;
	R.out = parse_sort("unit(a)+unit(b)");
	R.extras = {"_t1", "_t2", "_t3"};
	R.derived = [](const std::string& x) {
		return std::vector<std::string>{x + "$a", x + "$b", x + "$p"};
	};
	SortP in = m.output_sort, out = R.out;
	R.set = [in, out](const std::string& x, const StringAction& sa)
	    -> std::pair<std::vector<StringAction>, int> {
		std::string cls = letter_class(sa.fn);
		int f = cls == "1" ? 0 : cls == "a" ? 1 : cls == "b" ? 2 : -1;
		if (f < 0)
			throw Error("Unsupported", "unexpected letter '" + cls + "'");
		std::vector<StringAction> acts = {
		    routed(x + "$a", sa, const_fn(in, out, parse_for_sort("a", out))),
		    put_const(x + "$b", out, "b"), wipe(x + "$p", out)};
		return {acts, f};
	};
	R.concat = [out, su](const std::string& a, const std::string& b,
	                     const std::string& c, int fb,
	                     int fc) -> std::pair<std::vector<StringAction>, int> {
		std::vector<StringAction> s;
		if (fb == 0) {
			s = {mv("_t1", b + "$a"), cc("_t1", "_t1", c + "$a"),
			     mv("_t2", b + "$b"), cc("_t2", "_t2", c + "$b"),
			     mv("_t3", c + "$p")};
		} else {
			// b's latch decides which continuation of c is real
			std::string live = fb == 1 ? c + "$a" : c + "$b";
			std::string dead = fb == 1 ? c + "$b" : c + "$a";
			s = {mv("_t1", b + "$a"), mv("_t2", b + "$b"), mv("_t3", b + "$p"),
			     cc("_t3", "_t3", live), cc("_t3", "_t3", c + "$p")};
			if (su) s.push_back(wipe(dead, out));
		}
		s.push_back(mv(a + "$a", "_t1"));
		s.push_back(mv(a + "$b", "_t2"));
		s.push_back(mv(a + "$p", "_t3"));
		return {s, fc == 0 ? fb : fc};
	};
	R.finish = [out](const std::string& x, int) {
		// the machine starts in state a
		return std::vector<StringAction>{mv("_out", x + "$a"),
		                                 cc("_out", "_out", x + "$p"),
		                                 wipe(x + "$b", out)};
	};
	return R;
}

// --------------------------------------------------------------- homomorphism

SSTMachine hom_compose(const SSTMachine& m, const PrimeFn& g) {
	SSTMachine r = m;
	r.output_sort = g.cod();
	for (auto& [q, t] : r.delta)
		for (SSTBranch* b : {&t.yes, &t.no})
			for (auto& sa : b->strings) {
				if (sa.tag == StringAction::Concat) continue;
				if (sa.tag == StringAction::SetWord)
					throw Error("Unsupported",
					            "cannot post-compose over word writes");
				sa.fn = compose_fn(g.fn, sa.fn);
				if (g.tag == PrimeFn::Hom) sa.tag = StringAction::SetWord;
			}
	return r;
}

}  // namespace

SSTMachine post_compose_prime(const SSTMachine& m, const PrimeFn& g) {
	if (!same_sort(m.output_sort, g.dom()))
		throw Error("SortMismatch", "machine outputs " +
		                                show_sort(m.output_sort) +
		                                " but the prime expects " +
		                                show_sort(g.dom()));
	bool su = m.single_use_strings;
	switch (g.tag) {
	case PrimeFn::LpHom:
	case PrimeFn::Hom: return hom_compose(m, g);
	case PrimeFn::MapReverse: return apply_rules(m, map_reverse_rules(m, su));
	case PrimeFn::MapDuplicate:
		return apply_rules(m, map_duplicate_rules(m, su));
	case PrimeFn::AtomPropagation:
		return apply_rules(m, atom_propagation_rules(m, su));
	case PrimeFn::GroupTransducer:
		return apply_rules(m, group_rules(m, g.group, su));
	case PrimeFn::FlipFlop: return apply_rules(m, flipflop_rules(m, su));
	default:
		throw Error("Unsupported", "no register construction for this prime");
	}
}

}  // namespace dw
