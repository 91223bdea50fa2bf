#include <set>

#include "dw/build.hpp"
#include "dw/primes.hpp"

// Compilation of the length-preserving primes to Mealy machines goes through
// a small intermediate form: a stream spec maps (control state, equality type
// of the input letter) to register updates, an output template and a next
// state.  Atom registers are called slots here; the output template encodes
// "i-th distinct atom of the current letter" as the atom i and "contents of
// slot s" as the atom kSlotBase + s.

namespace dw {

namespace {

constexpr Atom kSlotBase = 1u << 20;

struct SpecStep {
	std::vector<std::pair<int, int>> slot_stores;  // slot <- i-th letter atom
	Value out;
	std::string next;
};

struct StreamSpec {
	SortP in, out;
	std::vector<std::string> states;
	std::string init;
	int nslots = 0;
	std::map<std::pair<std::string, Value>, SpecStep> step;
};

Question is_letter(const SortP& in, const Value& rep) {
	Question q;
	q.tag = Question::LetterPred;
	q.pred = PatternFn::make(in, sum_sort(unit_sort("yes"), unit_sort("no")),
	                         {{rep, vin(0, vu("yes"))}}, vin(1, vu("no")));
	return q;
}

bool says_yes(const PatternFn& pred, const Value& letter) {
	return pred(letter).side == 0;
}

// Store action writing the j-th distinct atom of letters in rep's orbit
Action store_atom_of(const SortP& in, const Value& rep, int j,
                     const std::string& reg) {
	Action a;
	a.tag = Action::Store;
	a.reg = reg;
	a.fn = PatternFn::make(in, sum_sort(atom_sort(), unit_sort("bot")),
	                       {{rep, vin(0, va(j))}}, vin(1, vu("bot")));
	return a;
}

// output function reading the registers holding the template's distinct
// encoded atoms, with one case per equality type of the register tuple
Action output_encoded(const TwoWaySUT& m, const Value& out,
                      const std::function<std::string(Atom)>& reg_of) {
	Action a;
	a.tag = Action::OutputMove;
	std::vector<Atom> encs;
	collect_atoms(out, encs);
	std::vector<Atom> order;
	for (Atom e : encs)
		if (std::find(order.begin(), order.end(), e) == order.end())
			order.push_back(e);
	int k = (int)order.size();
	for (Atom e : order) a.regs.push_back(reg_of(e));
	SortP domk = m.output_fn_dom(k);
	if (k == 0) {
		a.fn = const_fn(domk, m.output_sort, out);
		return a;
	}
	std::map<Atom, int> pos;
	for (int i = 0; i < k; i++) pos[order[i]] = i;
	std::vector<PatternCase> cs;
	for (const Value& guard : orbit_reps(domk)) {
		std::vector<Atom> slots;
		collect_atoms(guard, slots);
		Value tmpl = map_atoms(
		    out, [&](Atom e) { return slots[(size_t)pos.at(e)]; });
		cs.push_back({guard, tmpl});
	}
	a.fn = PatternFn::make(domk, m.output_sort, std::move(cs));
	return a;
}

MealySUT compile(const StreamSpec& spec) {
	MachineBuilder b(Kind::Mealy, show_sort(spec.in), show_sort(spec.out));
	for (int i = 0; i < spec.nslots; i++)
		b.m.registers.push_back("p" + std::to_string(i));
	int d = atom_dim(spec.in);
	for (int j = 0; j < d; j++)
		b.m.registers.push_back("t" + std::to_string(j));
	b.m.initial = spec.init;
	b.step("stuck", "stuck", b.simple(Action::Nop));
	auto reps = orbit_reps(spec.in);
	for (auto& q : spec.states) {
		std::string cur = q;
		for (size_t i = 0; i < reps.size(); i++) {
			const Value& rep = reps[i];
			const SpecStep& st = spec.step.at({q, rep});

			std::vector<Action> acts;
			std::vector<Atom> outatoms;
			collect_atoms(st.out, outatoms);
			std::set<Atom> letter_refs;
			for (Atom e : outatoms)
				if (e < kSlotBase) letter_refs.insert(e);
			for (Atom e : letter_refs)
				acts.push_back(store_atom_of(spec.in, rep, (int)e,
				                             "t" + std::to_string(e)));
			for (auto& [slot, j] : st.slot_stores)
				acts.push_back(store_atom_of(spec.in, rep, j,
				                             "p" + std::to_string(slot)));
			acts.push_back(output_encoded(b.m, st.out, [](Atom e) {
				return e < kSlotBase ? "t" + std::to_string(e)
				                     : "p" + std::to_string(e - kSlotBase);
			}));

			std::string miss =
			    i + 1 < reps.size() ? q + "#" + std::to_string(i + 1)
			                        : std::string("stuck");
			std::string hit = acts.size() == 1
			                      ? st.next
			                      : q + "#" + std::to_string(i) + "a1";
			b.add(cur, is_letter(spec.in, rep), {hit, acts[0]},
			      {miss, b.simple(Action::Nop)});
			for (size_t a = 1; a < acts.size(); a++) {
				std::string to =
				    a + 1 < acts.size()
				        ? q + "#" + std::to_string(i) + "a" +
				              std::to_string(a + 1)
				        : st.next;
				b.step(hit, to, acts[a]);
				hit = to;
			}
			cur = miss;
		}
	}
	auto errs = validate(b.m);
	if (!errs.empty()) throw Error("BadMachine", errs.front());
	return b.m;
}

// ----------------------------------------------------- per-prime stream specs

StreamSpec spec_lphom(const PatternFn& fn) {
	StreamSpec s;
	s.in = fn.dom;
	s.out = fn.cod;
	s.states = {"q"};
	s.init = "q";
	for (const Value& rep : orbit_reps(s.in))
		s.step[{"q", rep}] = {{}, fn(rep), "q"};
	return s;
}

StreamSpec spec_atom_propagation() {
	StreamSpec s;
	s.in = parse_sort("A+unit(eps)+unit(down)");
	s.out = parse_sort("A+unit(bot)");
	s.states = {"u", "d"};
	s.init = "u";
	Value bot = *coerce(vu("bot"), s.out);
	Value fwd = *coerce(va(kSlotBase), s.out);
	for (const Value& rep : orbit_reps(s.in)) {
		Value f = flatten(rep);
		bool is_atom = f.kind == Value::AtomV;
		bool is_down = f.kind == Value::UnitV && f.name == "down";
		for (std::string q : {"u", "d"}) {
			SpecStep st;
			if (is_atom) {
				st.slot_stores = {{0, 0}};
				st.out = bot;
				st.next = "d";
			} else if (is_down && q == "d") {
				st.out = fwd;  // emitting consumes the slot
				st.next = "u";
			} else {
				st.out = bot;
				st.next = q;
			}
			s.step[{q, rep}] = st;
		}
	}
	s.nslots = 1;
	return s;
}

StreamSpec spec_group(const Group& g) {
	StreamSpec s;
	s.in = s.out = g.letter_sort();
	s.init = "g0";
	for (int i = 0; i < g.size(); i++)
		s.states.push_back("g" + std::to_string(i));
	for (int i = 0; i < g.size(); i++)
		for (const Value& rep : orbit_reps(s.in)) {
			int acc = g.op(i, g.element(rep));
			s.step[{"g" + std::to_string(i), rep}] = {
			    {}, g.letter(acc), "g" + std::to_string(acc)};
		}
	return s;
}

StreamSpec spec_flipflop() {
	StreamSpec s;
	s.in = parse_sort("unit(a)+unit(b)+unit(1)");
	s.out = parse_sort("unit(a)+unit(b)");
	s.states = {"a", "b"};
	s.init = "a";
	for (std::string q : {"a", "b"})
		for (const Value& rep : orbit_reps(s.in)) {
			std::string name = flatten(rep).name;
			s.step[{q, rep}] = {{}, *coerce(vu(q), s.out),
			                    name == "1" ? q : name};
		}
	return s;
}

// tabulate an atomless Mealy machine: from each state and letter, follow the
// stay chain to its single output step
StreamSpec spec_tabulate(const TwoWaySUT& m) {
	StreamSpec s;
	s.in = m.input_sort;
	s.out = m.output_sort;
	s.states = m.states;
	s.init = m.initial;
	long long bound = stay_bound(m) + 2;
	for (auto& q : m.states)
		for (const Value& rep : orbit_reps(s.in)) {
			std::string cur = q;
			for (long long i = 0;; i++) {
				if (i > bound)
					throw Error("BadMachine",
					            "Mealy machine stays forever in state " + q);
				const Transition& tr = m.delta.at(cur);
				if (tr.question.tag == Question::RegEq)
					throw Error("BadMachine",
					            "atomless machine compares registers");
				const Branch& br =
				    says_yes(tr.question.pred, rep) ? tr.yes : tr.no;
				if (br.action.tag == Action::OutputMove) {
					s.step[{q, rep}] = {{}, br.action.fn(vu("nil")), br.state};
					break;
				}
				cur = br.state;  // Store on an atomless sort writes bot
			}
		}
	return s;
}

StreamSpec spec_of(const PrimeFn& p);

StreamSpec spec_par_with_id(const StreamSpec& inner, const SortP& id_sort) {
	StreamSpec s;
	s.in = prod_sort(inner.in, id_sort);
	s.out = prod_sort(inner.out, id_sort);
	s.states = inner.states;
	s.init = inner.init;
	s.nslots = inner.nslots;
	for (auto& q : s.states)
		for (const Value& rep : orbit_reps(s.in)) {
			// the left component is traversed first, so it is canonical and
			// its distinct-atom indices agree with the pair's
			const SpecStep& st = inner.step.at({q, rep.kids[0]});
			s.step[{q, rep}] = {st.slot_stores, vp(st.out, rep.kids[1]),
			                    st.next};
		}
	return s;
}

StreamSpec spec_of(const PrimeFn& p) {
	switch (p.tag) {
	case PrimeFn::LpHom: return spec_lphom(p.fn);
	case PrimeFn::ClassicalMealy: return spec_tabulate(*p.mealy);
	case PrimeFn::AtomPropagation: return spec_atom_propagation();
	case PrimeFn::GroupTransducer: return spec_group(p.group);
	case PrimeFn::FlipFlop: return spec_flipflop();
	case PrimeFn::ParWithId:
		return spec_par_with_id(spec_of(*p.inner), p.id_sort);
	default:
		throw Error("Unsupported",
		            "prime is not computable letter by letter");
	}
}

}  // namespace

MealySUT as_mealy(const PrimeFn& p) {
	if (p.tag == PrimeFn::ClassicalMealy) return *p.mealy;
	return compile(spec_of(p));
}

// --------------------------------------------------------------- composition
//
// The product machine simulates g on the letters f emits.  Each atom f
// stores is written into `copies` physical registers at once (a slot), so
// that later equality probes and g's reads each have a fresh copy.  The
// product state tracks, besides both control states, which slot each
// register of f and of g refers to, how many copies of each slot are spent,
// and the known equalities between live slots; everything else about the
// letters f emits is resolved at construction time.

namespace {

enum RelKind { kUnknown = 0, kEqual = 1, kUnequal = 2 };

struct CompState {
	std::string fq, gq;
	std::vector<int> freg, greg;        // register index -> slot or -1
	std::vector<int> used;              // spent copies per slot
	std::vector<std::vector<int>> rel;  // RelKind per slot pair

	std::string encode() const {
		std::string s = fq + "|" + gq;
		auto app = [&](const std::vector<int>& v) {
			for (int x : v) s += "," + std::to_string(x);
			s += "|";
		};
		app(freg);
		app(greg);
		app(used);
		for (auto& row : rel) app(row);
		return s;
	}
};

struct Composer {
	const MealySUT& f;
	const MealySUT& g;
	MachineBuilder b;
	int copies, nslots;
	long long step_budget;
	std::vector<Value> reps;
	std::map<std::string, std::string> memo;
	std::vector<std::pair<std::string, CompState>> todo;
	int fresh = 0;

	struct Ctx {
		CompState st;
		Value rep;                   // current input letter
		std::vector<int> atom_slot;  // letter atom index -> slot, this position
		bool have_gamma = false;
		Value gamma;  // atoms are representative slot ids
		long long steps = 0;
	};

	Composer(const MealySUT& f_, const MealySUT& g_)
	    : f(f_),
	      g(g_),
	      b(Kind::Mealy, show_sort(f_.input_sort), show_sort(g_.output_sort)) {
		copies = (int)std::min<long long>(stay_bound(g), 12);
		nslots = (int)(f.registers.size() + g.registers.size()) +
		         atom_dim(f.input_sort) + 1;
		step_budget = stay_bound(f) + stay_bound(g) + 4;
		for (int i = 0; i < nslots; i++)
			for (int j = 0; j < copies; j++)
				b.m.registers.push_back("s" + std::to_string(i) + "c" +
				                        std::to_string(j));
		b.m.registers.push_back("dx");
		b.m.registers.push_back("dy");
		b.step("stuck", "stuck", b.simple(Action::Nop));
		reps = orbit_reps(f.input_sort);
	}

	std::string aux() { return "x" + std::to_string(fresh++); }

	int reg_index(const std::vector<std::string>& regs, const std::string& r) {
		return (int)(std::find(regs.begin(), regs.end(), r) - regs.begin());
	}

	int rel_of(const CompState& st, int a, int b2) {
		return a == b2 ? kEqual : st.rel[a][b2];
	}

	std::vector<int> cls(const CompState& st, int a) {
		std::vector<int> c = {a};
		for (int x = 0; x < nslots; x++)
			if (x != a && st.rel[a][x] == kEqual) c.push_back(x);
		return c;
	}

	void set_rel(CompState& st, int a, int b2, int kind) {
		for (int x : cls(st, a))
			for (int y : cls(st, b2)) {
				st.rel[x][y] = st.rel[y][x] = kind;
			}
		if (kind == kEqual) {
			// merged classes inherit each other's known disequalities
			for (int z = 0; z < nslots; z++) {
				int r = std::max(st.rel[a][z], st.rel[b2][z]);
				if (z == a || z == b2) continue;
				if (r == kUnequal)
					for (int x : cls(st, a)) {
						st.rel[x][z] = st.rel[z][x] = kUnequal;
					}
			}
		}
	}

	int rep_slot(const CompState& st, int a) {
		int m = a;
		for (int x : cls(st, a)) m = std::min(m, x);
		return m;
	}

	int alloc_slot(Ctx& ctx) {
		std::vector<bool> ref(nslots, false);
		for (int s : ctx.st.freg)
			if (s >= 0) ref[s] = true;
		for (int s : ctx.st.greg)
			if (s >= 0) ref[s] = true;
		for (int s : ctx.atom_slot)
			if (s >= 0) ref[s] = true;
		if (ctx.have_gamma) {
			std::vector<Atom> as;
			collect_atoms(ctx.gamma, as);
			for (Atom a : as)
				for (int x : cls(ctx.st, (int)a)) ref[x] = true;
		}
		for (int i = 0; i < nslots; i++)
			if (!ref[i]) {
				ctx.st.used[i] = 0;
				for (int x = 0; x < nslots; x++)
					ctx.st.rel[i][x] = ctx.st.rel[x][i] = kUnknown;
				return i;
			}
		throw Error("Internal", "slot pool exhausted");
	}

	std::string consume(Ctx& ctx, int slot) {
		if (ctx.st.used[slot] >= copies)
			throw Error("CopyBudget",
			            "composition needs more than " +
			                std::to_string(copies) + " copies of an atom");
		return "s" + std::to_string(slot) + "c" +
		       std::to_string(ctx.st.used[slot]++);
	}

	void emit_reject(const std::string& phys) {
		// reading two never-written registers rejects the run
		b.regeq(phys, "dx", "dy", {"stuck", b.simple(Action::Nop)},
		        {"stuck", b.simple(Action::Nop)});
	}

	std::string comp_state(CompState st) {
		// forget everything about slots no register refers to
		std::vector<bool> live(nslots, false);
		for (int s : st.freg)
			if (s >= 0) live[s] = true;
		for (int s : st.greg)
			if (s >= 0) live[s] = true;
		for (int i = 0; i < nslots; i++)
			if (!live[i]) {
				st.used[i] = 0;
				for (int x = 0; x < nslots; x++)
					st.rel[i][x] = st.rel[x][i] = kUnknown;
			}
		std::string key = st.encode();
		auto it = memo.find(key);
		if (it != memo.end()) return it->second;
		std::string name = "S" + std::to_string((int)memo.size());
		memo[key] = name;
		todo.push_back({name, st});
		return name;
	}

	void build_position(const std::string& name, const CompState& st) {
		std::string cur = name;
		for (size_t i = 0; i < reps.size(); i++) {
			std::string entry = aux();
			std::string miss = i + 1 < reps.size() ? aux() : "stuck";
			b.add(cur, is_letter(f.input_sort, reps[i]),
			      {entry, b.simple(Action::Nop)},
			      {miss, b.simple(Action::Nop)});
			Ctx ctx;
			ctx.st = st;
			ctx.rep = reps[i];
			ctx.atom_slot.assign(
			    (size_t)least_support(reps[i]).size(), -1);
			sim_f(ctx, entry);
			cur = miss;
		}
	}

	void sim_f(Ctx ctx, const std::string& phys) {
		if (ctx.steps++ > step_budget) {
			b.step(phys, "stuck", b.simple(Action::Nop));
			return;
		}
		const Transition& tr = f.delta.at(ctx.st.fq);
		if (tr.question.tag == Question::LetterPred) {
			bool yes = says_yes(tr.question.pred, ctx.rep);
			apply_f(std::move(ctx), phys, yes ? tr.yes : tr.no);
			return;
		}
		int a = ctx.st.freg[reg_index(f.registers, tr.question.r1)];
		int c2 = ctx.st.freg[reg_index(f.registers, tr.question.r2)];
		if (a < 0 || c2 < 0) {
			emit_reject(phys);
			return;
		}
		int r = rel_of(ctx.st, a, c2);
		if (r != kUnknown) {
			ctx.st.freg[reg_index(f.registers, tr.question.r1)] = -1;
			ctx.st.freg[reg_index(f.registers, tr.question.r2)] = -1;
			apply_f(std::move(ctx), phys, r == kEqual ? tr.yes : tr.no);
			return;
		}
		std::string n1 = consume(ctx, a), n2 = consume(ctx, c2);
		std::string py = aux(), pn = aux();
		b.regeq(phys, n1, n2, {py, b.simple(Action::Nop)},
		        {pn, b.simple(Action::Nop)});
		Ctx cy = ctx, cn = std::move(ctx);
		set_rel(cy.st, a, c2, kEqual);
		set_rel(cn.st, a, c2, kUnequal);
		cy.st.freg[reg_index(f.registers, tr.question.r1)] = -1;
		cy.st.freg[reg_index(f.registers, tr.question.r2)] = -1;
		cn.st.freg[reg_index(f.registers, tr.question.r1)] = -1;
		cn.st.freg[reg_index(f.registers, tr.question.r2)] = -1;
		apply_f(std::move(cy), py, tr.yes);
		apply_f(std::move(cn), pn, tr.no);
	}

	void apply_f(Ctx ctx, const std::string& phys, const Branch& br) {
		switch (br.action.tag) {
		case Action::Nop:
			ctx.st.fq = br.state;
			sim_f(std::move(ctx), phys);
			return;
		case Action::Store: {
			int ri = reg_index(f.registers, br.action.reg);
			Value res = flatten(br.action.fn(ctx.rep));
			if (res.kind != Value::AtomV) {
				ctx.st.freg[ri] = -1;
				ctx.st.fq = br.state;
				sim_f(std::move(ctx), phys);
				return;
			}
			auto sup = least_support(ctx.rep);
			int j = (int)(std::find(sup.begin(), sup.end(), res.atom) -
			              sup.begin());
			int slot = alloc_slot(ctx);
			ctx.st.freg[ri] = slot;
			for (size_t k = 0; k < ctx.atom_slot.size(); k++)
				if (ctx.atom_slot[k] >= 0)
					set_rel(ctx.st, slot, ctx.atom_slot[k],
					        (int)k == j ? kEqual : kUnequal);
			if (ctx.atom_slot[(size_t)j] < 0) ctx.atom_slot[(size_t)j] = slot;
			std::string cur = phys;
			for (int k = 0; k < copies; k++) {
				std::string to = aux();
				b.step(cur, to,
				       store_atom_of(f.input_sort, ctx.rep, j,
				                     "s" + std::to_string(slot) + "c" +
				                         std::to_string(k)));
				cur = to;
			}
			ctx.st.fq = br.state;
			sim_f(std::move(ctx), cur);
			return;
		}
		case Action::OutputMove: {
			std::vector<int> slots;
			for (auto& r : br.action.regs) {
				int s = ctx.st.freg[reg_index(f.registers, r)];
				if (s < 0) {
					emit_reject(phys);
					return;
				}
				slots.push_back(s);
			}
			probe_then_emit(std::move(ctx), phys, slots, br);
			return;
		}
		default: throw Error("Internal", "unexpected Mealy action");
		}
	}

	// resolve the full equality type of the emitted tuple, then hand the
	// symbolic letter to g
	void probe_then_emit(Ctx ctx, const std::string& phys,
	                     const std::vector<int>& slots, const Branch& br) {
		for (size_t i = 0; i < slots.size(); i++)
			for (size_t j = i + 1; j < slots.size(); j++)
				if (rel_of(ctx.st, slots[i], slots[j]) == kUnknown) {
					std::string n1 = consume(ctx, slots[i]);
					std::string n2 = consume(ctx, slots[j]);
					std::string py = aux(), pn = aux();
					b.regeq(phys, n1, n2, {py, b.simple(Action::Nop)},
					        {pn, b.simple(Action::Nop)});
					Ctx cy = ctx, cn = std::move(ctx);
					set_rel(cy.st, slots[i], slots[j], kEqual);
					set_rel(cn.st, slots[i], slots[j], kUnequal);
					probe_then_emit(std::move(cy), py, slots, br);
					probe_then_emit(std::move(cn), pn, slots, br);
					return;
				}
		Value arg;
		if (slots.empty()) {
			arg = vu("nil");
		} else {
			arg = va((Atom)rep_slot(ctx.st, slots.back()));
			for (int i = (int)slots.size() - 2; i >= 0; i--)
				arg = vp(va((Atom)rep_slot(ctx.st, slots[(size_t)i])),
				         std::move(arg));
		}
		ctx.gamma = br.action.fn(arg);
		ctx.have_gamma = true;
		for (auto& r : br.action.regs)
			ctx.st.freg[reg_index(f.registers, r)] = -1;
		ctx.st.fq = br.state;
		sim_g(std::move(ctx), phys);
	}

	void sim_g(Ctx ctx, const std::string& phys) {
		if (ctx.steps++ > step_budget) {
			b.step(phys, "stuck", b.simple(Action::Nop));
			return;
		}
		const Transition& tr = g.delta.at(ctx.st.gq);
		if (tr.question.tag == Question::LetterPred) {
			bool yes = says_yes(tr.question.pred, ctx.gamma);
			apply_g(std::move(ctx), phys, yes ? tr.yes : tr.no);
			return;
		}
		int a = ctx.st.greg[reg_index(g.registers, tr.question.r1)];
		int c2 = ctx.st.greg[reg_index(g.registers, tr.question.r2)];
		if (a < 0 || c2 < 0) {
			emit_reject(phys);
			return;
		}
		int r = rel_of(ctx.st, a, c2);
		if (r != kUnknown) {
			ctx.st.greg[reg_index(g.registers, tr.question.r1)] = -1;
			ctx.st.greg[reg_index(g.registers, tr.question.r2)] = -1;
			apply_g(std::move(ctx), phys, r == kEqual ? tr.yes : tr.no);
			return;
		}
		std::string n1 = consume(ctx, a), n2 = consume(ctx, c2);
		std::string py = aux(), pn = aux();
		b.regeq(phys, n1, n2, {py, b.simple(Action::Nop)},
		        {pn, b.simple(Action::Nop)});
		Ctx cy = ctx, cn = std::move(ctx);
		set_rel(cy.st, a, c2, kEqual);
		set_rel(cn.st, a, c2, kUnequal);
		cy.st.greg[reg_index(g.registers, tr.question.r1)] = -1;
		cy.st.greg[reg_index(g.registers, tr.question.r2)] = -1;
		cn.st.greg[reg_index(g.registers, tr.question.r1)] = -1;
		cn.st.greg[reg_index(g.registers, tr.question.r2)] = -1;
		apply_g(std::move(cy), py, tr.yes);
		apply_g(std::move(cn), pn, tr.no);
	}

	void apply_g(Ctx ctx, const std::string& phys, const Branch& br) {
		switch (br.action.tag) {
		case Action::Nop:
			ctx.st.gq = br.state;
			sim_g(std::move(ctx), phys);
			return;
		case Action::Store: {
			int ri = reg_index(g.registers, br.action.reg);
			Value res = flatten(br.action.fn(ctx.gamma));
			ctx.st.greg[ri] =
			    res.kind == Value::AtomV ? (int)res.atom : -1;
			ctx.st.gq = br.state;
			sim_g(std::move(ctx), phys);
			return;
		}
		case Action::OutputMove: {
			Action act;
			act.tag = Action::OutputMove;
			act.fn = br.action.fn;
			for (auto& r : br.action.regs) {
				int ri = reg_index(g.registers, r);
				int s = ctx.st.greg[ri];
				if (s < 0) {
					emit_reject(phys);
					return;
				}
				act.regs.push_back(consume(ctx, s));
				ctx.st.greg[ri] = -1;
			}
			ctx.st.gq = br.state;
			std::string next = comp_state(ctx.st);
			b.step(phys, next, act);
			return;
		}
		default: throw Error("Internal", "unexpected Mealy action");
		}
	}
};

}  // namespace

MealySUT compose_mealy(const MealySUT& f, const MealySUT& g) {
	if (f.kind != Kind::Mealy || g.kind != Kind::Mealy)
		throw Error("KindMismatch", "composition is defined on Mealy machines");
	if (!same_sort(f.output_sort, g.input_sort))
		throw Error("SortMismatch",
		            "first machine outputs " + show_sort(f.output_sort) +
		                " but second expects " + show_sort(g.input_sort));
	Composer c(f, g);
	CompState init;
	init.fq = f.initial;
	init.gq = g.initial;
	init.freg.assign(f.registers.size(), -1);
	init.greg.assign(g.registers.size(), -1);
	init.used.assign((size_t)c.nslots, 0);
	init.rel.assign((size_t)c.nslots,
	                std::vector<int>((size_t)c.nslots, kUnknown));
	std::string s0 = c.comp_state(init);
	c.b.m.initial = s0;
	while (!c.todo.empty()) {
		auto [name, st] = c.todo.back();
		c.todo.pop_back();
		c.build_position(name, st);
	}
	auto errs = validate(c.b.m);
	if (!errs.empty()) throw Error("BadMachine", errs.front());
	return c.b.m;
}

}  // namespace dw
