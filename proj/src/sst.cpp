#include "dw/sst.hpp"

#include <set>

#include "dw/build.hpp"

namespace dw {

SortP SSTMachine::ext_letter_sort() const {
	return sum_sort(input_sort,
	                sum_sort(unit_sort("lend"), unit_sort("rend")));
}

SortP SSTMachine::string_fn_dom(int k) const {
	if (k == 0) return unit_sort("nil");
	SortP s = atom_sort();
	for (int i = 1; i < k; i++) s = prod_sort(atom_sort(), s);
	return s;
}

static SortP yes_no_sort() {
	return sum_sort(unit_sort("yes"), unit_sort("no"));
}
static SortP atom_or_bot_sort() {
	return sum_sort(atom_sort(), unit_sort("bot"));
}

std::vector<std::string> validate_sst(const SSTMachine& m) {
	std::vector<std::string> out;
	std::set<std::string> states(m.states.begin(), m.states.end());
	std::set<std::string> regs(m.registers.begin(), m.registers.end());
	std::set<std::string> sregs(m.string_registers.begin(),
	                            m.string_registers.end());
	if (states.size() != m.states.size()) out.push_back("duplicate state names");
	if (regs.size() != m.registers.size())
		out.push_back("duplicate atom register names");
	if (sregs.size() != m.string_registers.size())
		out.push_back("duplicate string register names");
	for (auto& r : m.registers)
		if (sregs.count(r))
			out.push_back("register '" + r + "' is both atom and string");
	if (!states.count(m.initial))
		out.push_back("initial state '" + m.initial + "' not declared");
	if (!sregs.count(m.output_register))
		out.push_back("output register '" + m.output_register +
		              "' not declared");
	for (auto& q : m.states)
		if (!m.delta.count(q))
			out.push_back("state '" + q + "' has no transition");
	for (auto& [q, t] : m.delta) {
		if (!states.count(q)) {
			out.push_back("transition from undeclared state '" + q + "'");
			continue;
		}
		auto where = [&](const std::string& what) {
			return "state '" + q + "': " + what;
		};
		if (t.question.tag == Question::RegEq) {
			if (t.question.r1 == t.question.r2)
				out.push_back(where("question registers must be distinct"));
			for (auto& r : {t.question.r1, t.question.r2})
				if (!regs.count(r))
					out.push_back(where("undeclared register '" + r + "'"));
		} else {
			if (!same_sort(t.question.pred.dom, m.ext_letter_sort()))
				out.push_back(where("question domain is not the letter sort"));
			if (!same_sort(t.question.pred.cod, yes_no_sort()))
				out.push_back(where("question codomain is not yes+no"));
		}
		for (const SSTBranch* b : {&t.yes, &t.no}) {
			if (!states.count(b->state))
				out.push_back(where("branch to undeclared state '" + b->state +
				                    "'"));
			for (auto& sa : b->strings) {
				if (!sregs.count(sa.dst))
					out.push_back(where("write to undeclared string register '" +
					                    sa.dst + "'"));
				if (sa.tag == StringAction::Concat) {
					if (sa.a == sa.b)
						out.push_back(
						    where("concatenation sources must be distinct"));
					for (auto& r : {sa.a, sa.b})
						if (!sregs.count(r))
							out.push_back(
							    where("undeclared string register '" + r + "'"));
				} else {
					std::set<std::string> seen;
					for (auto& r : sa.atom_regs) {
						if (!regs.count(r))
							out.push_back(
							    where("undeclared register '" + r + "'"));
						if (!seen.insert(r).second)
							out.push_back(
							    where("write sources must be distinct"));
					}
					if (!same_sort(sa.fn.dom,
					               m.string_fn_dom((int)sa.atom_regs.size())))
						out.push_back(where(
						    "write domain does not match its register count"));
					SortP want = sa.tag == StringAction::SetLetter
					                 ? m.output_sort
					                 : list_sort(m.output_sort);
					if (!same_sort(sa.fn.cod, want))
						out.push_back(
						    where("write codomain is not the output sort"));
				}
			}
			const Action& a = b->action;
			switch (a.tag) {
			case Action::Store:
				if (!regs.count(a.reg))
					out.push_back(where("store to undeclared register '" +
					                    a.reg + "'"));
				if (!same_sort(a.fn.dom, m.ext_letter_sort()))
					out.push_back(where("store domain is not the letter sort"));
				if (!same_sort(a.fn.cod, atom_or_bot_sort()))
					out.push_back(where("store codomain is not A+bot"));
				break;
			case Action::MoveRight:
			case Action::Accept:
			case Action::Reject:
			case Action::Nop:
				break;
			default:
				out.push_back(where("action not available to this model"));
			}
		}
	}
	return out;
}

// ------------------------------------------------------------- evaluation

namespace {

struct SimS {
	const SSTMachine& m;
	const Word& w;

	int n;
	int pos = 0;
	std::string state;
	Valuation val;
	std::map<std::string, Word> contents;
	std::map<std::string, int> last;  // forest node of each register's value
	std::vector<ForestNode> nodes;
	int step = 0;
	Word output;

	SimS(const SSTMachine& mm, const Word& ww) : m(mm), w(ww) {
		n = (int)w.size();
		state = m.initial;
		for (auto& r : m.registers) val[r] = std::nullopt;
		for (auto& r : m.string_registers) {
			contents[r] = {};
			last[r] = -1;
		}
	}

	Value letter() const {
		if (pos == 0) return ext_lend();
		if (pos == n + 1) return ext_rend();
		return ext_of_letter(w[pos - 1]);
	}

	std::string encode_key() const {
		std::string k = state + "@" + std::to_string(pos);
		for (auto& [r, v] : val)
			k += "|" + (v ? std::to_string(*v) : std::string("_"));
		return k;
	}

	// false on an undefined source register (run rejects)
	bool do_string(const StringAction& sa) {
		if (sa.tag == StringAction::Concat) {
			ForestNode nd;
			nd.reg = sa.dst;
			nd.step = step;
			nd.left = last[sa.a];
			nd.right = last[sa.b];
			Word res = contents[sa.a];
			res.insert(res.end(), contents[sa.b].begin(),
			           contents[sa.b].end());
			if (m.single_use_strings) {
				contents[sa.a].clear();
				contents[sa.b].clear();
				last[sa.a] = last[sa.b] = -1;
			}
			contents[sa.dst] = std::move(res);
			last[sa.dst] = (int)nodes.size();
			nodes.push_back(std::move(nd));
			return true;
		}
		std::vector<Atom> as;
		for (auto& r : sa.atom_regs) {
			if (!val[r]) return false;
			as.push_back(*val[r]);
			if (m.single_use_strings) val[r] = std::nullopt;
		}
		Value arg = vu("nil");
		if (!as.empty()) {
			arg = va(as.back());
			for (int i = (int)as.size() - 2; i >= 0; i--)
				arg = vp(va(as[i]), arg);
		}
		Value v = sa.fn(arg);
		ForestNode nd;
		nd.reg = sa.dst;
		nd.step = step;
		nd.letters = sa.tag == StringAction::SetLetter ? Word{v} : v.kids;
		contents[sa.dst] = nd.letters;
		last[sa.dst] = (int)nodes.size();
		nodes.push_back(std::move(nd));
		return true;
	}

	RunResult finish(RunResult::Tag tag) {
		RunResult r;
		r.tag = tag;
		if (tag == RunResult::Accepted) r.output = output;
		return r;
	}

	RunResult go() {
		std::set<std::string> seen;
		while (true) {
			if (!seen.insert(encode_key()).second)
				return finish(RunResult::Loop);
			auto it = m.delta.find(state);
			if (it == m.delta.end()) return finish(RunResult::Rejected);
			const SSTTransition& t = it->second;

			bool answer;
			if (t.question.tag == Question::LetterPred) {
				answer = flatten(t.question.pred(letter())).name == "yes";
			} else {
				auto v1 = val[t.question.r1], v2 = val[t.question.r2];
				if (m.single_use_strings) {
					val[t.question.r1] = std::nullopt;
					val[t.question.r2] = std::nullopt;
				}
				if (!v1 || !v2) return finish(RunResult::Rejected);
				answer = *v1 == *v2;
			}

			const SSTBranch& b = answer ? t.yes : t.no;
			for (auto& sa : b.strings)
				if (!do_string(sa)) return finish(RunResult::Rejected);
			switch (b.action.tag) {
			case Action::Store: {
				Value r = b.action.fn(letter());
				val[b.action.reg] =
				    r.side == 0 ? std::optional<Atom>(r.kids[0].atom)
				                : std::nullopt;
				break;
			}
			case Action::MoveRight:
				pos++;
				if (pos > n + 1) return finish(RunResult::Rejected);
				break;
			case Action::Accept:
				output = contents[m.output_register];
				return finish(RunResult::Accepted);
			case Action::Reject: return finish(RunResult::Rejected);
			default: break;
			}
			step++;
			state = b.state;
		}
	}
};

}  // namespace

RunResult eval_sst(const SSTMachine& m, const Word& w) {
	for (auto& l : w)
		if (!typechecks(l, m.input_sort))
			throw Error("SortMismatch", "letter " + show_value(l) +
			                                " is not of sort " +
			                                show_sort(m.input_sort));
	SimS s(m, w);
	return s.go();
}

// ----------------------------------------------------------- run structure

Word RegisterForest::dfs() const {
	Word out;
	std::vector<std::pair<int, int>> stack;  // (node, phase)
	if (root >= 0) stack.push_back({root, 0});
	while (!stack.empty()) {
		auto [i, phase] = stack.back();
		stack.pop_back();
		const ForestNode& nd = nodes[i];
		if (nd.left < 0 && nd.right < 0 && phase == 0) {
			out.insert(out.end(), nd.letters.begin(), nd.letters.end());
			continue;
		}
		if (phase == 0) {
			stack.push_back({i, 1});
			if (nd.left >= 0) stack.push_back({nd.left, 0});
		} else if (nd.right >= 0) {
			stack.push_back({nd.right, 0});
		}
	}
	return out;
}

RegisterForest register_forest(const SSTMachine& m, const Word& w) {
	SimS s(m, w);
	if (s.go().tag != RunResult::Accepted)
		throw Error("NotAccepting", "register forest needs an accepting run");
	RegisterForest f;
	f.nodes = std::move(s.nodes);
	f.root = s.last[m.output_register];
	return f;
}

bool adjacency_letter_check(const Word& output, const Value& last, int k) {
	std::set<Value> adjacent;
	for (size_t i = 0; i < output.size(); i++) {
		if (!(output[i] == last)) continue;
		if (i > 0) adjacent.insert(output[i - 1]);
		if (i + 1 < output.size()) adjacent.insert(output[i + 1]);
	}
	return (int)adjacent.size() <= 2 * k;
}

// ------------------------------------------------------------------ JSON

static nlohmann::json string_action_to_json(const StringAction& sa) {
	switch (sa.tag) {
	case StringAction::SetLetter:
		return {{"setletter",
		         {{"reg", sa.dst},
		          {"fn", patternfn_to_json(sa.fn)},
		          {"atom_regs", sa.atom_regs}}}};
	case StringAction::SetWord:
		return {{"setword",
		         {{"reg", sa.dst},
		          {"fn", patternfn_to_json(sa.fn)},
		          {"atom_regs", sa.atom_regs}}}};
	case StringAction::Concat:
		return {{"concat", {{"dst", sa.dst}, {"a", sa.a}, {"b", sa.b}}}};
	}
	return nullptr;
}

static StringAction string_action_from_json(const nlohmann::json& j,
                                            const SSTMachine& m) {
	StringAction sa;
	if (j.contains("concat")) {
		sa.tag = StringAction::Concat;
		sa.dst = j.at("concat").at("dst").get<std::string>();
		sa.a = j.at("concat").at("a").get<std::string>();
		sa.b = j.at("concat").at("b").get<std::string>();
		return sa;
	}
	const char* key = j.contains("setletter") ? "setletter" : "setword";
	if (!j.contains(key))
		throw Error("ParseError", "unknown string action object");
	sa.tag = std::string(key) == "setletter" ? StringAction::SetLetter
	                                         : StringAction::SetWord;
	sa.dst = j.at(key).at("reg").get<std::string>();
	sa.atom_regs = j.at(key).at("atom_regs").get<std::vector<std::string>>();
	SortP cod = sa.tag == StringAction::SetLetter ? m.output_sort
	                                              : list_sort(m.output_sort);
	sa.fn = patternfn_from_json(j.at(key).at("fn"),
	                            m.string_fn_dom((int)sa.atom_regs.size()), cod);
	return sa;
}

static nlohmann::json sst_action_to_json(const Action& a) {
	switch (a.tag) {
	case Action::Store:
		return {{"store", {{"reg", a.reg}, {"fn", patternfn_to_json(a.fn)}}}};
	case Action::MoveRight: return "moveright";
	case Action::Accept: return "accept";
	case Action::Reject: return "reject";
	default: return "nop";
	}
}

static Action sst_action_from_json(const nlohmann::json& j,
                                   const SSTMachine& m) {
	Action a;
	if (j.is_string()) {
		std::string s = j.get<std::string>();
		if (s == "moveright") a.tag = Action::MoveRight;
		else if (s == "accept") a.tag = Action::Accept;
		else if (s == "reject") a.tag = Action::Reject;
		else if (s == "nop") a.tag = Action::Nop;
		else throw Error("ParseError", "unknown action '" + s + "'");
		return a;
	}
	if (!j.contains("store")) throw Error("ParseError", "unknown action object");
	a.tag = Action::Store;
	a.reg = j.at("store").at("reg").get<std::string>();
	a.fn = patternfn_from_json(j.at("store").at("fn"), m.ext_letter_sort(),
	                           atom_or_bot_sort());
	return a;
}

nlohmann::json sst_to_json(const SSTMachine& m) {
	nlohmann::json tr = nlohmann::json::object();
	for (auto& [q, t] : m.delta) {
		nlohmann::json question;
		if (t.question.tag == Question::LetterPred)
			question = {{"letterpred", patternfn_to_json(t.question.pred)}};
		else
			question = {{"regeq", {t.question.r1, t.question.r2}}};
		auto branch = [&](const SSTBranch& b) {
			nlohmann::json ss = nlohmann::json::array();
			for (auto& sa : b.strings) ss.push_back(string_action_to_json(sa));
			return nlohmann::json{{"state", b.state},
			                      {"strings", ss},
			                      {"action", sst_action_to_json(b.action)}};
		};
		tr[q] = {{"question", question},
		         {"yes", branch(t.yes)},
		         {"no", branch(t.no)}};
	}
	return {{"kind", "sst"},
	        {"input_sort", show_sort(m.input_sort)},
	        {"output_sort", show_sort(m.output_sort)},
	        {"states", m.states},
	        {"initial", m.initial},
	        {"registers", m.registers},
	        {"string_registers", m.string_registers},
	        {"output_register", m.output_register},
	        {"single_use_strings", m.single_use_strings},
	        {"transitions", tr}};
}

SSTMachine sst_from_json(const nlohmann::json& j) {
	SSTMachine m;
	m.input_sort = parse_sort(j.at("input_sort").get<std::string>());
	m.output_sort = parse_sort(j.at("output_sort").get<std::string>());
	m.states = j.at("states").get<std::vector<std::string>>();
	m.initial = j.at("initial").get<std::string>();
	m.registers = j.at("registers").get<std::vector<std::string>>();
	m.string_registers =
	    j.at("string_registers").get<std::vector<std::string>>();
	m.output_register = j.at("output_register").get<std::string>();
	m.single_use_strings = j.value("single_use_strings", true);
	for (auto& [q, tj] : j.at("transitions").items()) {
		SSTTransition t;
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
		     {std::pair<const char*, SSTBranch*>{"yes", &t.yes},
		      std::pair<const char*, SSTBranch*>{"no", &t.no}}) {
			br->state = tj.at(name).at("state").get<std::string>();
			for (auto& sj : tj.at(name).at("strings"))
				br->strings.push_back(string_action_from_json(sj, m));
			br->action = sst_action_from_json(tj.at(name).at("action"), m);
		}
		m.delta[q] = std::move(t);
	}
	return m;
}

// -------------------------------------------------------------- fixtures

namespace {

StringAction cat(const std::string& dst, const std::string& a,
                 const std::string& b) {
	StringAction sa;
	sa.tag = StringAction::Concat;
	sa.dst = dst;
	sa.a = a;
	sa.b = b;
	return sa;
}

StringAction setl(const std::string& dst, PatternFn fn,
                  std::vector<std::string> regs = {}) {
	StringAction sa;
	sa.tag = StringAction::SetLetter;
	sa.dst = dst;
	sa.fn = std::move(fn);
	sa.atom_regs = std::move(regs);
	return sa;
}

struct SSTBuilder {
	SSTMachine m;
	SortP ext;

	SSTBuilder(SortP in, SortP out) {
		m.input_sort = std::move(in);
		m.output_sort = std::move(out);
		ext = m.ext_letter_sort();
	}

	void state(const std::string& q) {
		if (std::find(m.states.begin(), m.states.end(), q) == m.states.end())
			m.states.push_back(q);
	}

	void add(const std::string& q, Question question, SSTBranch yes,
	         SSTBranch no) {
		state(q);
		state(yes.state);
		state(no.state);
		m.delta[q] = {std::move(question), std::move(yes), std::move(no)};
	}

	void branch(const std::string& q, const std::vector<std::string>& yes_on,
	            SSTBranch yes, SSTBranch no) {
		Question question;
		question.tag = Question::LetterPred;
		question.pred = letter_pred(ext, yes_on);
		add(q, std::move(question), std::move(yes), std::move(no));
	}

	void step(const std::string& q, const std::string& to,
	          std::vector<StringAction> strings, Action a) {
		SSTBranch b{to, std::move(strings), std::move(a)};
		branch(q, {}, b, b);
	}

	Action store(const std::string& r) {
		Action a;
		a.tag = Action::Store;
		a.reg = r;
		a.fn = store_letter_atom(ext);
		return a;
	}

	Action simple(Action::Tag t) {
		Action a;
		a.tag = t;
		return a;
	}

	// write the letter's atom into dst, embedded into the output sort
	StringAction put_atom(const std::string& dst, const std::string& reg) {
		auto emb = coerce(va(0), m.output_sort);
		if (!emb)
			throw Error("SortMismatch", "output sort has no atom slot");
		return setl(dst,
		            PatternFn::make(atom_sort(), m.output_sort,
		                            {{va(0), *emb}}),
		            {reg});
	}

	StringAction put_const(const std::string& dst, const std::string& lit) {
		return setl(dst, const_fn(unit_sort("nil"), m.output_sort,
		                          parse_for_sort(lit, m.output_sort)));
	}
};

}  // namespace

SSTMachine map_reverse_sst() {
	SortP sig = sum_sort(atom_sort(), unit_sort("sep"));
	SSTBuilder b(sig, sig);
	b.m.registers = {"r"};
	b.m.string_registers = {"A", "B", "T", "S"};
	b.m.output_register = "B";
	b.m.initial = "scan";
	b.branch("scan", {"sep"},
	         {"scan",
	          {b.put_const("S", "sep"), cat("B", "B", "A"), cat("B", "B", "S")},
	          b.simple(Action::MoveRight)},
	         {"q2", {}, b.simple(Action::Nop)});
	b.branch("q2", {"rend"},
	         {"q2", {cat("B", "B", "A")}, b.simple(Action::Accept)},
	         {"q3", {}, b.simple(Action::Nop)});
	b.branch("q3", {"lend"}, {"scan", {}, b.simple(Action::MoveRight)},
	         {"put", {}, b.store("r")});
	// prepend: A := aA
	b.step("put", "scan", {b.put_atom("T", "r"), cat("A", "T", "A")},
	       b.simple(Action::MoveRight));
	return b.m;
}

SSTMachine map_duplicate_sst() {
	SortP sig = sum_sort(atom_sort(), unit_sort("sep"));
	SSTBuilder b(sig, sig);
	b.m.registers = {"r1", "r2"};
	b.m.string_registers = {"A1", "A2", "B", "T", "S"};
	b.m.output_register = "B";
	b.m.initial = "scan";
	b.branch("scan", {"sep"},
	         {"scan",
	          {cat("B", "B", "A1"), cat("B", "B", "A2"),
	           b.put_const("S", "sep"), cat("B", "B", "S")},
	          b.simple(Action::MoveRight)},
	         {"q2", {}, b.simple(Action::Nop)});
	b.branch("q2", {"rend"},
	         {"q2", {cat("B", "B", "A1"), cat("B", "B", "A2")},
	          b.simple(Action::Accept)},
	         {"q3", {}, b.simple(Action::Nop)});
	b.branch("q3", {"lend"}, {"scan", {}, b.simple(Action::MoveRight)},
	         {"st2", {}, b.store("r1")});
	// the block is kept in two copies, fed from two stores of the same letter
	b.step("st2", "put", {}, b.store("r2"));
	b.step("put", "scan",
	       {b.put_atom("T", "r1"), cat("A1", "A1", "T"),
	        b.put_atom("T", "r2"), cat("A2", "A2", "T")},
	       b.simple(Action::MoveRight));
	return b.m;
}

SSTMachine identity_sst(const SortP& sigma) {
	if (has_list(sigma) || atom_dim(sigma) > 1)
		throw Error("Unsupported",
		            "identity machine needs letters with at most one atom");
	SSTBuilder b(sigma, sigma);
	b.m.registers = {"r"};
	b.m.string_registers = {"B", "T"};
	b.m.output_register = "B";
	b.m.initial = "q0";
	b.branch("q0", {"lend"}, {"q0", {}, b.simple(Action::MoveRight)},
	         {"q1", {}, b.simple(Action::Nop)});
	std::vector<Value> reps = orbit_reps(sigma);
	for (size_t i = 0; i < reps.size(); i++) {
		std::string q = "q" + std::to_string(i + 1);
		std::string next = "q" + std::to_string(i + 2);
		std::string lit = show_for_sort(ext_of_letter(reps[i]), b.ext);
		bool atomic = !least_support(reps[i]).empty();
		SSTBranch yes;
		if (atomic) {
			yes = {"copy", {}, b.store("r")};
		} else {
			yes = {"q0",
			       {setl("T", const_fn(unit_sort("nil"), sigma, reps[i])),
			        cat("B", "B", "T")},
			       b.simple(Action::MoveRight)};
		}
		if (i + 1 == reps.size())
			b.branch(q, {lit}, yes, {"end", {}, b.simple(Action::Nop)});
		else
			b.branch(q, {lit}, yes, {next, {}, b.simple(Action::Nop)});
	}
	if (atom_dim(sigma) == 1)
		b.step("copy", "q0", {b.put_atom("T", "r"), cat("B", "B", "T")},
		       b.simple(Action::MoveRight));
	b.branch("end", {"rend"}, {"end", {}, b.simple(Action::Accept)},
	         {"end", {}, b.simple(Action::Reject)});
	return b.m;
}

SSTMachine reverse_sst(const SortP& sigma) {
	SSTMachine m = identity_sst(sigma);
	// flip every append into a prepend
	for (auto& [q, t] : m.delta)
		for (SSTBranch* br : {&t.yes, &t.no})
			for (auto& sa : br->strings)
				if (sa.tag == StringAction::Concat && sa.a == "B" &&
				    sa.b == "T") {
					sa.a = "T";
					sa.b = "B";
				}
	return m;
}

SSTMachine copyful_doubler() {
	SSTBuilder b(atom_sort(), atom_sort());
	b.m.registers = {"r"};
	b.m.string_registers = {"A", "B", "Z"};
	b.m.output_register = "A";
	b.m.initial = "q0";
	b.m.single_use_strings = false;
	b.branch("q0", {"lend"}, {"q0", {}, b.simple(Action::MoveRight)},
	         {"q1", {}, b.simple(Action::Nop)});
	b.branch("q1", {"rend"}, {"q1", {}, b.simple(Action::Accept)},
	         {"first", {}, b.store("r")});
	b.step("first", "loop", {b.put_atom("A", "r")},
	       b.simple(Action::MoveRight));
	b.branch("loop", {"rend"}, {"loop", {}, b.simple(Action::Accept)},
	         // B := A, then A := A·B; the sources are shared, not consumed
	         {"loop", {cat("B", "A", "Z"), cat("A", "A", "B")},
	          b.simple(Action::MoveRight)});
	return b.m;
}

}  // namespace dw
