#include "dw/equiv.hpp"

#include <cstring>
#include <set>

#include "dw/sst.hpp"

namespace dw {

std::string RunnerOutcome::show(const SortP& letter) const {
	switch (tag) {
	case Out: return letter ? show_word_for_sort(out, letter) : show_word(out);
	case Accept: return "accept";
	case Reject: return "reject";
	case Loop: return "loop";
	}
	return "?";
}

// -------------------------------------------------------------------- runner

Runner runner_machine(TwoWaySUT m) {
	Runner r;
	r.tag = Runner::Machine;
	r.machine = std::make_shared<const TwoWaySUT>(std::move(m));
	return r;
}

Runner runner_pipeline(Pipeline p) {
	Runner r;
	r.tag = Runner::Pipe;
	r.pipeline = std::make_shared<const Pipeline>(std::move(p));
	return r;
}

Runner runner_prime(PrimeFn p) { return runner_pipeline(pipe_prime(std::move(p))); }

Runner runner_sst(SSTMachine m) {
	Runner r;
	r.tag = Runner::Sst;
	r.sst = std::make_shared<const SSTMachine>(std::move(m));
	return r;
}

Runner runner_rlf(RlfP e) {
	Runner r;
	r.tag = Runner::Rlf;
	r.rlf = std::move(e);
	typecheck(r.rlf);
	if (!r.dom())
		throw Error("SortMismatch",
		            "expression does not take words as input");
	return r;
}

SortP Runner::dom() const {
	switch (tag) {
	case Machine: return machine->input_sort;
	case Pipe: return pipeline->dom();
	case Sst: return sst->input_sort;
	case Rlf: {
		SortP d = typecheck(rlf).first;
		return d->kind == Sort::List ? d->left : nullptr;
	}
	}
	return nullptr;
}

SortP Runner::cod() const {
	if (is_acceptor()) return nullptr;
	switch (tag) {
	case Machine: return machine->output_sort;
	case Pipe: return pipeline->cod();
	case Sst: return sst->output_sort;
	case Rlf: {
		SortP c = typecheck(rlf).second;
		return c->kind == Sort::List ? c->left : nullptr;
	}
	}
	return nullptr;
}

bool Runner::is_acceptor() const {
	if (tag == Machine)
		return machine->kind == Kind::Automaton1W ||
		       machine->kind == Kind::Automaton2W;
	if (tag == Rlf) return same_sort(typecheck(rlf).second, answer_sort());
	return false;
}

RunnerOutcome Runner::operator()(const Word& w) const {
	RunnerOutcome o;
	switch (tag) {
	case Machine: {
		RunResult r = run(*machine, w);
		if (r.tag == RunResult::Loop)
			o.tag = RunnerOutcome::Loop;
		else if (r.tag != RunResult::Accepted)
			o.tag = RunnerOutcome::Reject;
		else if (is_acceptor())
			o.tag = RunnerOutcome::Accept;
		else
			o.out = r.output;
		break;
	}
	case Pipe:
		o.out = eval_pipeline(*pipeline, w);
		break;
	case Sst: {
		RunResult r = eval_sst(*sst, w);
		if (r.tag == RunResult::Loop)
			o.tag = RunnerOutcome::Loop;
		else if (r.tag != RunResult::Accepted)
			o.tag = RunnerOutcome::Reject;
		else
			o.out = r.output;
		break;
	}
	case Rlf: {
		Value v = eval_rlf(rlf, vl(w));
		if (is_acceptor())
			o.tag = v.side == 0 ? RunnerOutcome::Accept : RunnerOutcome::Reject;
		else
			o.out = v.kids;
		break;
	}
	}
	return o;
}

// --------------------------------------------------------------- comparison

static void check_comparable(const Runner& a, const Runner& b) {
	if (!same_sort(a.dom(), b.dom()))
		throw Error("SortMismatch", "runners take different input letters");
	if (a.is_acceptor() != b.is_acceptor())
		throw Error("SortMismatch",
		            "cannot compare an acceptor with a transducer");
	if (!a.is_acceptor() && !same_sort(a.cod(), b.cod()))
		throw Error("SortMismatch", "runners emit different output letters");
}

EquivResult bounded_equiv(const Runner& a, const Runner& b, int max_len) {
	check_comparable(a, b);
	EquivResult res;
	SortP letter = a.dom();
	for (int len = 0; len <= max_len; len++) {
		for (const Word& w : canonical_words(letter, len)) {
			res.words_checked++;
			RunnerOutcome oa = a(w), ob = b(w);
			if (!(oa == ob)) {
				res.equal = false;
				res.counterexample = w;
				res.left = oa;
				res.right = ob;
				res.lengths_checked = len;
				return res;
			}
		}
		res.lengths_checked = len;
	}
	return res;
}

EquivResult fuzz(const Runner& a, const Runner& b, int trials, int max_len,
                 const std::vector<Atom>& pool, std::uint64_t seed) {
	check_comparable(a, b);
	EquivResult res;
	SortP letter = a.dom();
	std::mt19937_64 rng(seed);
	for (int i = 0; i < trials; i++) {
		Word w = random_word(letter, (int)(rng() % (max_len + 1)), pool, rng);
		res.words_checked++;
		RunnerOutcome oa = a(w), ob = b(w);
		if (!(oa == ob)) {
			res.equal = false;
			res.counterexample = w;
			res.left = oa;
			res.right = ob;
			return res;
		}
	}
	return res;
}

// ------------------------------------------------------------ deatomisation

static const char* kDiamond = "◇";  // ◇
static const char* kStop = "∘";     // ∘

bool Deatomisation::injective() const {
	std::set<int> seen;
	for (auto& [a, n] : reps)
		if (!seen.insert(n).second) return false;
	return true;
}

Deatomisation Deatomisation::identity_for(const std::vector<Atom>& atoms) {
	Deatomisation d;
	for (Atom a : atoms) d.reps[a] = (int)a;
	return d;
}

std::string deatomise(const Deatomisation& d, const Value& v) {
	switch (v.kind) {
	case Value::AtomV: {
		auto it = d.reps.find(v.atom);
		if (it == d.reps.end() || it->second < 1)
			throw Error("MissingAtom", "no representation for atom " +
			                               std::to_string(v.atom));
		std::string s;
		for (int i = 0; i < it->second; i++) s += kDiamond;
		return s + kStop;
	}
	case Value::UnitV:
		return v.name;
	case Value::PairV:
		return "(" + deatomise(d, v.kids[0]) + "," +
		       deatomise(d, v.kids[1]) + ")";
	case Value::InjV:
		return (v.side == 0 ? "L" : "R") + deatomise(d, v.kids[0]);
	case Value::ListV: {
		std::string s;
		for (auto& el : v.kids) s += deatomise(d, el);
		return s;
	}
	}
	return "";
}

std::string deatomise(const Deatomisation& d, const Word& w) {
	std::string s;
	for (auto& l : w) s += deatomise(d, l);
	return s;
}

namespace {

struct DeatomParser {
	const std::string& s;
	size_t i = 0;
	std::map<int, Atom> inv;

	bool lit(const char* t) {
		size_t n = std::strlen(t);
		if (s.compare(i, n, t) != 0) return false;
		i += n;
		return true;
	}
	void expect(const char* t) {
		if (!lit(t))
			throw Error("ParseError", "unexpected input at byte " +
			                              std::to_string(i) + " in: " + s);
	}

	Value value(const SortP& sort) {
		switch (sort->kind) {
		case Sort::Atoms: {
			int n = 0;
			while (lit(kDiamond)) n++;
			expect(kStop);
			auto it = inv.find(n);
			if (it == inv.end())
				throw Error("MissingAtom",
				            "no atom is represented by " + std::to_string(n) +
				                " diamonds");
			return va(it->second);
		}
		case Sort::Unit:
			expect(sort->name.c_str());
			return vu(sort->name);
		case Sort::Prod: {
			expect("(");
			Value a = value(sort->left);
			expect(",");
			Value b = value(sort->right);
			expect(")");
			return vp(std::move(a), std::move(b));
		}
		case Sort::Sum:
			if (lit("L")) return vin(0, value(sort->left));
			expect("R");
			return vin(1, value(sort->right));
		case Sort::List:
			throw Error("ParseError",
			            "list sorts have no deatomised letter form");
		}
		throw Error("ParseError", "bad sort");
	}
};

}  // namespace

Word parse_deatomised(const Deatomisation& d, const std::string& s,
                      const SortP& letter) {
	if (!d.injective())
		throw Error("NotInjective",
		            "parsing needs an injective deatomisation");
	DeatomParser p{s, 0, {}};
	for (auto& [a, n] : d.reps) p.inv[n] = a;
	Word w;
	while (p.i < s.size()) w.push_back(p.value(letter));
	return w;
}

}  // namespace dw
