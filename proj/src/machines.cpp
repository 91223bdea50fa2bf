#include "dw/machines.hpp"

#include <algorithm>
#include <set>

namespace dw {

std::string show_kind(Kind k) {
	switch (k) {
	case Kind::TwoWay: return "twoway";
	case Kind::OneWay: return "oneway";
	case Kind::Automaton2W: return "automaton2w";
	case Kind::Automaton1W: return "automaton1w";
	case Kind::Mealy: return "mealy";
	}
	return "?";
}

Kind parse_kind(const std::string& s) {
	if (s == "twoway") return Kind::TwoWay;
	if (s == "oneway") return Kind::OneWay;
	if (s == "automaton2w") return Kind::Automaton2W;
	if (s == "automaton1w") return Kind::Automaton1W;
	if (s == "mealy") return Kind::Mealy;
	throw Error("ParseError", "unknown machine kind '" + s + "'");
}

SortP TwoWaySUT::ext_letter_sort() const {
	if (kind == Kind::Mealy) return input_sort;
	return sum_sort(input_sort,
	                sum_sort(unit_sort("lend"), unit_sort("rend")));
}

SortP TwoWaySUT::output_fn_dom(int k) const {
	if (k == 0) return unit_sort("nil");
	SortP s = atom_sort();
	for (int i = 1; i < k; i++) s = prod_sort(atom_sort(), s);
	return s;
}

Value ext_of_letter(const Value& letter) { return vin(0, letter); }
Value ext_lend() { return vin(1, vin(0, vu("lend"))); }
Value ext_rend() { return vin(1, vin(1, vu("rend"))); }

static SortP yes_no_sort() {
	return sum_sort(unit_sort("yes"), unit_sort("no"));
}
static SortP atom_or_bot_sort() {
	return sum_sort(atom_sort(), unit_sort("bot"));
}

std::vector<std::string> validate(const TwoWaySUT& m) {
	std::vector<std::string> out;
	std::set<std::string> states(m.states.begin(), m.states.end());
	std::set<std::string> regs(m.registers.begin(), m.registers.end());
	if (states.size() != m.states.size())
		out.push_back("duplicate state names");
	if (regs.size() != m.registers.size())
		out.push_back("duplicate register names");
	if (!states.count(m.initial))
		out.push_back("initial state '" + m.initial + "' not declared");
	for (auto& q : m.states)
		if (!m.delta.count(q))
			out.push_back("state '" + q + "' has no transition");
	bool is_automaton =
	    m.kind == Kind::Automaton1W || m.kind == Kind::Automaton2W;
	bool is_one_way = m.kind == Kind::OneWay || m.kind == Kind::Automaton1W;
	for (auto& [q, t] : m.delta) {
		if (!states.count(q)) {
			out.push_back("transition from undeclared state '" + q + "'");
			continue;
		}
		auto where = [&](const char* what) {
			return "state '" + q + "': " + what;
		};
		if (t.question.tag == Question::RegEq) {
			if (t.question.r1 == t.question.r2)
				out.push_back(where("question registers must be distinct"));
			for (auto& r : {t.question.r1, t.question.r2})
				if (!regs.count(r))
					out.push_back(where("undeclared register '") + r + "'");
		} else {
			if (!same_sort(t.question.pred.dom, m.ext_letter_sort()))
				out.push_back(where("question domain is not the letter sort"));
			if (!same_sort(t.question.pred.cod, yes_no_sort()))
				out.push_back(where("question codomain is not yes+no"));
		}
		for (const Branch* b : {&t.yes, &t.no}) {
			if (!states.count(b->state))
				out.push_back(where("branch to undeclared state '") +
				              b->state + "'");
			const Action& a = b->action;
			switch (a.tag) {
			case Action::Store:
				if (!regs.count(a.reg))
					out.push_back(where("store to undeclared register '") +
					              a.reg + "'");
				if (!same_sort(a.fn.dom, m.ext_letter_sort()))
					out.push_back(
					    where("store domain is not the letter sort"));
				if (!same_sort(a.fn.cod, atom_or_bot_sort()))
					out.push_back(where("store codomain is not A+bot"));
				break;
			case Action::Output:
			case Action::OutputMove: {
				if (a.tag == Action::OutputMove && m.kind != Kind::Mealy)
					out.push_back(
					    where("output-and-move is only for Mealy machines"));
				if (a.tag == Action::Output && m.kind == Kind::Mealy)
					out.push_back(
					    where("Mealy machines output only while advancing"));
				if (is_automaton)
					out.push_back(where("automata cannot output"));
				std::set<std::string> seen;
				for (auto& r : a.regs) {
					if (!regs.count(r))
						out.push_back(
						    where("output from undeclared register '") + r +
						    "'");
					if (!seen.insert(r).second)
						out.push_back(
						    where("output registers must be distinct"));
				}
				if (!same_sort(a.fn.dom,
				               m.output_fn_dom((int)a.regs.size())))
					out.push_back(where(
					    "output domain does not match its register count"));
				if (!same_sort(a.fn.cod, m.output_sort))
					out.push_back(
					    where("output codomain is not the output sort"));
				break;
			}
			case Action::MoveLeft:
				if (is_one_way)
					out.push_back(where("one-way machines cannot move left"));
				if (m.kind == Kind::Mealy)
					out.push_back(where("Mealy machines cannot move left"));
				break;
			case Action::MoveRight:
				if (m.kind == Kind::Mealy)
					out.push_back(
					    where("Mealy machines advance only by outputting"));
				break;
			case Action::Accept:
			case Action::Reject:
				if (m.kind == Kind::Mealy)
					out.push_back(
					    where("Mealy machines cannot accept or reject"));
				break;
			case Action::Nop: break;
			}
		}
	}
	return out;
}

namespace {

struct Sim {
	const TwoWaySUT& m;
	const Word& w;
	std::vector<TraceStep>* trace;
	bool audit;

	int n;
	int pos;
	std::string state;
	Valuation val;
	std::set<std::string> consumed;
	Word out;
	Valuation val_after_question;
	std::vector<std::pair<int, std::string>> configs;  // (pos, state)
	std::vector<std::optional<Value>> emitted;         // per step
	int step = 0;
	int violation = -1;

	explicit Sim(const TwoWaySUT& mm, const Word& ww,
	             std::vector<TraceStep>* tr, bool au)
	    : m(mm), w(ww), trace(tr), audit(au) {
		n = (int)w.size();
		pos = m.kind == Kind::Mealy ? 1 : 0;
		state = m.initial;
		for (auto& r : m.registers) val[r] = std::nullopt;
	}

	Value letter() const {
		if (m.kind == Kind::Mealy) return w[pos - 1];
		if (pos == 0) return ext_lend();
		if (pos == n + 1) return ext_rend();
		return ext_of_letter(w[pos - 1]);
	}

	// returns true if a single-use violation was found at this read
	bool read_reg(const std::string& r) {
		if (!m.single_use && val[r] && consumed.count(r)) {
			if (violation < 0) violation = step;
			return true;
		}
		if (m.single_use)
			val[r] = std::nullopt;
		else
			consumed.insert(r);
		return false;
	}

	std::string encode_key() const {
		std::string k = state + "@" + std::to_string(pos);
		for (auto& [r, v] : val)
			k += "|" + (v ? std::to_string(*v) : std::string("_"));
		return k;
	}

	void record(const Transition& t, const Branch& b) {
		if (!trace) return;
		TraceStep s;
		s.step = step;
		s.pos = configs.back().first;
		s.state = configs.back().second;
		s.question = t.question.tag;
		if (t.question.tag == Question::RegEq)
			s.question_regs = {t.question.r1, t.question.r2};
		s.action = b.action.tag;
		if (b.action.tag == Action::Store)
			s.action_regs = {b.action.reg};
		else if (b.action.tag == Action::Output ||
		         b.action.tag == Action::OutputMove)
			s.action_regs = b.action.regs;
		s.val_after_question = val_after_question;
		s.val_after = val;
		trace->push_back(std::move(s));
	}

	RunResult finish(RunResult::Tag tag) {
		RunResult r;
		r.tag = tag;
		r.output = out;
		r.violation_step = violation;
		if (audit && violation >= 0) {
			r.tag = RunResult::SingleUseViolation;
			r.output.clear();
		}
		return r;
	}

	RunResult go() {
		if (m.kind == Kind::Mealy && n == 0) return finish(RunResult::Accepted);
		std::set<std::string> seen;
		while (true) {
			if (!seen.insert(encode_key()).second)
				return finish(RunResult::Loop);
			configs.push_back({pos, state});
			emitted.push_back(std::nullopt);
			auto it = m.delta.find(state);
			if (it == m.delta.end()) return finish(RunResult::Rejected);
			const Transition& t = it->second;

			bool answer;
			if (t.question.tag == Question::LetterPred) {
				answer = flatten(t.question.pred(letter())).name == "yes";
			} else {
				auto v1 = val[t.question.r1], v2 = val[t.question.r2];
				bool viol = read_reg(t.question.r1);
				viol = read_reg(t.question.r2) || viol;
				if (viol && audit) return finish(RunResult::Rejected);
				if (!v1 || !v2) {
					record(t, t.no);
					return finish(RunResult::Rejected);
				}
				answer = *v1 == *v2;
			}
			val_after_question = val;

			const Branch& b = answer ? t.yes : t.no;
			const Action& a = b.action;
			bool halted = false;
			RunResult::Tag halt_tag = RunResult::Rejected;
			switch (a.tag) {
			case Action::Store: {
				Value r = a.fn(letter());
				val[a.reg] = r.side == 0
				                 ? std::optional<Atom>(r.kids[0].atom)
				                 : std::nullopt;
				consumed.erase(a.reg);
				break;
			}
			case Action::Output:
			case Action::OutputMove: {
				bool undef = false, viol = false;
				std::vector<Atom> as;
				for (auto& r : a.regs) {
					if (!val[r]) undef = true;
					else as.push_back(*val[r]);
					viol = read_reg(r) || viol;
				}
				if (viol && audit) return finish(RunResult::Rejected);
				if (undef) {
					record(t, b);
					return finish(RunResult::Rejected);
				}
				Value arg = vu("nil");
				if (!as.empty()) {
					arg = va(as.back());
					for (int i = (int)as.size() - 2; i >= 0; i--)
						arg = vp(va(as[i]), arg);
				}
				Value letter_out = a.fn(arg);
				out.push_back(letter_out);
				emitted.back() = letter_out;
				if (a.tag == Action::OutputMove) {
					pos++;
					if (pos > n) {
						halted = true;
						halt_tag = RunResult::Accepted;
					}
				}
				break;
			}
			case Action::MoveLeft:
				pos--;
				if (pos < 0) {
					halted = true;
					halt_tag = RunResult::Rejected;
				}
				break;
			case Action::MoveRight:
				pos++;
				if (pos > n + 1) {
					halted = true;
					halt_tag = RunResult::Rejected;
				}
				break;
			case Action::Accept:
				halted = true;
				halt_tag = RunResult::Accepted;
				break;
			case Action::Reject:
				halted = true;
				halt_tag = RunResult::Rejected;
				break;
			case Action::Nop: break;
			}
			record(t, b);
			step++;
			if (halted) return finish(halt_tag);
			state = b.state;
		}
	}
};

}  // namespace

RunResult run(const TwoWaySUT& m, const Word& w,
              std::vector<TraceStep>* trace) {
	for (auto& l : w)
		if (!typechecks(l, m.input_sort))
			throw Error("SortMismatch",
			            "letter " + show_value(l) + " is not of sort " +
			                show_sort(m.input_sort));
	Sim s(m, w, trace, false);
	return s.go();
}

bool accepts(const TwoWaySUT& m, const Word& w) {
	if (m.kind != Kind::Automaton1W && m.kind != Kind::Automaton2W)
		throw Error("KindMismatch", "accepts needs an automaton kind");
	return run(m, w).tag == RunResult::Accepted;
}

RunResult audit_single_use(const TwoWaySUT& m, const Word& w) {
	Sim s(m, w, nullptr, true);
	return s.go();
}

long long stay_bound(const TwoWaySUT& m) {
	long long b = (long long)m.states.size();
	if (b == 0) b = 1;
	long long base = 2 + atom_dim(m.input_sort);
	for (size_t i = 0; i < m.registers.size(); i++) b *= base;
	return b;
}

// ------------------------------------------------------------- run graphs

int RunGraph::width() const {
	size_t w = 0;
	for (auto& c : columns) w = std::max(w, c.size());
	return (int)w;
}

Word RunGraph::as_word() const {
	Word out;
	for (auto& col : columns) {
		std::vector<Value> rows;
		for (auto& row : col) {
			Value e = row.emitted ? vin(1, *row.emitted)
			                      : vin(0, vu("eps"));
			Value nx = vu("bot");
			if (row.next) {
				const char* off = row.next->first < 0   ? "prev"
				                  : row.next->first == 0 ? "stay"
				                                         : "next";
				nx = vp(vu(off),
				        vu("r" + std::to_string(row.next->second + 1)));
			}
			rows.push_back(vp(e, nx));
		}
		out.push_back(vl(std::move(rows)));
	}
	return out;
}

RunGraph RunGraph::of_word(const Word& w) {
	RunGraph g;
	for (auto& col : w) {
		if (col.kind != Value::ListV)
			throw Error("ParseError", "run graph column is not a list");
		std::vector<RunGraphRow> rows;
		for (auto& rv : col.kids) {
			RunGraphRow row;
			const Value& e = rv.kids[0];
			if (e.side == 1) row.emitted = e.kids[0];
			const Value& nx = rv.kids[1];
			if (nx.kind == Value::PairV) {
				int off = nx.kids[0].name == "prev"  ? -1
				          : nx.kids[0].name == "stay" ? 0
				                                      : 1;
				int target = std::stoi(nx.kids[1].name.substr(1)) - 1;
				row.next = {{off, target}};
			}
			rows.push_back(std::move(row));
		}
		g.columns.push_back(std::move(rows));
	}
	return g;
}

Word RunGraph::replay() const {
	// start at the unique row with no incoming edge
	std::vector<std::vector<int>> indeg(columns.size());
	for (size_t c = 0; c < columns.size(); c++)
		indeg[c].assign(columns[c].size(), 0);
	for (size_t c = 0; c < columns.size(); c++)
		for (auto& row : columns[c])
			if (row.next) indeg[c + row.next->first][row.next->second]++;
	std::optional<std::pair<int, int>> cur;
	for (size_t c = 0; c < columns.size(); c++)
		for (size_t r = 0; r < columns[c].size(); r++)
			if (indeg[c][r] == 0) {
				if (cur)
					throw Error("BadRunGraph",
					            "multiple rows without predecessor");
				cur = {{(int)c, (int)r}};
			}
	Word out;
	if (!cur) {
		if (!columns.empty())
			throw Error("BadRunGraph", "no row without predecessor");
		return out;
	}
	while (true) {
		const RunGraphRow& row = columns[cur->first][cur->second];
		if (row.emitted) out.push_back(*row.emitted);
		if (!row.next) break;
		cur = {{cur->first + row.next->first, row.next->second}};
	}
	return out;
}

RunGraph run_graph(const TwoWaySUT& m, const Word& w) {
	Sim s(m, w, nullptr, false);
	RunResult r = s.go();
	if (r.tag != RunResult::Accepted)
		throw Error("NotAccepting", "run graph needs an accepting run");
	RunGraph g;
	int base = m.kind == Kind::Mealy ? 1 : 0;  // first tape position
	int ncols = m.kind == Kind::Mealy ? (int)w.size() : (int)w.size() + 2;
	g.columns.resize(ncols);
	// row index of each visited configuration, per column in visit order
	std::vector<int> rows(s.configs.size());
	for (size_t i = 0; i < s.configs.size(); i++) {
		int c = s.configs[i].first - base;
		rows[i] = (int)g.columns[c].size();
		RunGraphRow row;
		row.emitted = s.emitted[i];
		g.columns[c].push_back(std::move(row));
	}
	for (size_t i = 0; i + 1 < s.configs.size(); i++) {
		int c = s.configs[i].first - base;
		int cn = s.configs[i + 1].first - base;
		g.columns[c][rows[i]].next = {{cn - c, rows[i + 1]}};
	}
	return g;
}

// ------------------------------------------------------------------ JSON

std::string show_for_sort(const Value& v, const SortP& s) {
	Value flat = flatten(v);
	std::string text = show_value(flat);
	try {
		auto back = coerce(parse_value(text), s);
		if (back && *back == v) return text;
	} catch (const Error&) {
	}
	return show_value(v);
}

Value parse_for_sort(const std::string& text, const SortP& s) {
	Value v = parse_value(text);
	auto c = coerce(v, s);
	if (!c)
		throw Error("SortMismatch",
		            "'" + text + "' is not of sort " + show_sort(s));
	return *c;
}

Word parse_word_for_sort(const std::string& text, const SortP& s) {
	Word raw = parse_word(text);
	Word out;
	for (auto& v : raw) {
		auto c = coerce(v, s);
		if (!c)
			throw Error("SortMismatch", "letter " + show_value(v) +
			                                " is not of sort " + show_sort(s));
		out.push_back(*c);
	}
	return out;
}

std::string show_word_for_sort(const Word& w, const SortP& s) {
	std::string r;
	for (size_t i = 0; i < w.size(); i++) {
		if (i) r += ",";
		r += show_for_sort(w[i], s);
	}
	return r;
}

nlohmann::json patternfn_to_json(const PatternFn& f) {
	nlohmann::json cs = nlohmann::json::array();
	for (auto& c : f.cases)
		cs.push_back({{"guard", show_for_sort(c.guard, f.dom)},
		              {"template", show_for_sort(c.tmpl, f.cod)}});
	return {{"cases", cs}};
}

PatternFn patternfn_from_json(const nlohmann::json& j, const SortP& dom,
                              const SortP& cod) {
	std::vector<PatternCase> cs;
	for (auto& c : j.at("cases"))
		cs.push_back({parse_for_sort(c.at("guard").get<std::string>(), dom),
		              parse_for_sort(c.at("template").get<std::string>(),
		                             cod)});
	std::optional<Value> otherwise;
	if (j.contains("otherwise"))
		otherwise =
		    parse_for_sort(j.at("otherwise").get<std::string>(), cod);
	return PatternFn::make(dom, cod, std::move(cs), otherwise);
}

static nlohmann::json action_to_json(const Action& a) {
	switch (a.tag) {
	case Action::Store:
		return {{"store", {{"reg", a.reg}, {"fn", patternfn_to_json(a.fn)}}}};
	case Action::Output:
		return {{"output",
		         {{"fn", patternfn_to_json(a.fn)}, {"regs", a.regs}}}};
	case Action::OutputMove:
		return {{"outputmove",
		         {{"fn", patternfn_to_json(a.fn)}, {"regs", a.regs}}}};
	case Action::MoveLeft: return "moveleft";
	case Action::MoveRight: return "moveright";
	case Action::Accept: return "accept";
	case Action::Reject: return "reject";
	case Action::Nop: return "nop";
	}
	return nullptr;
}

static Action action_from_json(const nlohmann::json& j, const TwoWaySUT& m) {
	Action a;
	if (j.is_string()) {
		std::string s = j.get<std::string>();
		if (s == "moveleft") a.tag = Action::MoveLeft;
		else if (s == "moveright") a.tag = Action::MoveRight;
		else if (s == "accept") a.tag = Action::Accept;
		else if (s == "reject") a.tag = Action::Reject;
		else if (s == "nop") a.tag = Action::Nop;
		else throw Error("ParseError", "unknown action '" + s + "'");
		return a;
	}
	if (j.contains("store")) {
		a.tag = Action::Store;
		a.reg = j.at("store").at("reg").get<std::string>();
		a.fn = patternfn_from_json(j.at("store").at("fn"),
		                           m.ext_letter_sort(), atom_or_bot_sort());
		return a;
	}
	const char* key = j.contains("output") ? "output" : "outputmove";
	if (!j.contains(key)) throw Error("ParseError", "unknown action object");
	a.tag = std::string(key) == "output" ? Action::Output : Action::OutputMove;
	a.regs = j.at(key).at("regs").get<std::vector<std::string>>();
	a.fn = patternfn_from_json(j.at(key).at("fn"),
	                           m.output_fn_dom((int)a.regs.size()),
	                           m.output_sort);
	return a;
}

nlohmann::json machine_to_json(const TwoWaySUT& m) {
	nlohmann::json tr = nlohmann::json::object();
	for (auto& [q, t] : m.delta) {
		nlohmann::json question;
		if (t.question.tag == Question::LetterPred)
			question = {{"letterpred", patternfn_to_json(t.question.pred)}};
		else
			question = {{"regeq", {t.question.r1, t.question.r2}}};
		tr[q] = {{"question", question},
		         {"yes",
		          {{"state", t.yes.state},
		           {"action", action_to_json(t.yes.action)}}},
		         {"no",
		          {{"state", t.no.state},
		           {"action", action_to_json(t.no.action)}}}};
	}
	return {{"kind", show_kind(m.kind)},
	        {"input_sort", show_sort(m.input_sort)},
	        {"output_sort", show_sort(m.output_sort)},
	        {"states", m.states},
	        {"initial", m.initial},
	        {"registers", m.registers},
	        {"single_use", m.single_use},
	        {"transitions", tr}};
}

TwoWaySUT machine_from_json(const nlohmann::json& j) {
	TwoWaySUT m;
	m.kind = parse_kind(j.at("kind").get<std::string>());
	m.input_sort = parse_sort(j.at("input_sort").get<std::string>());
	m.output_sort = j.contains("output_sort")
	                    ? parse_sort(j.at("output_sort").get<std::string>())
	                    : unit_sort("nil");
	m.states = j.at("states").get<std::vector<std::string>>();
	m.initial = j.at("initial").get<std::string>();
	m.registers = j.at("registers").get<std::vector<std::string>>();
	m.single_use = j.value("single_use", true);
	for (auto& [q, tj] : j.at("transitions").items()) {
		Transition t;
		const nlohmann::json& qj = tj.at("question");
		if (qj.contains("letterpred")) {
			t.question.tag = Question::LetterPred;
			t.question.pred = patternfn_from_json(
			    qj.at("letterpred"), m.ext_letter_sort(), yes_no_sort());
		} else {
			t.question.tag = Question::RegEq;
			t.question.r1 = qj.at("regeq").at(0).get<std::string>();
			t.question.r2 = qj.at("regeq").at(1).get<std::string>();
		}
		for (auto [name, br] :
		     {std::pair<const char*, Branch*>{"yes", &t.yes},
		      std::pair<const char*, Branch*>{"no", &t.no}}) {
			br->state = tj.at(name).at("state").get<std::string>();
			br->action = action_from_json(tj.at(name).at("action"), m);
		}
		m.delta[q] = std::move(t);
	}
	return m;
}

}  // namespace dw
