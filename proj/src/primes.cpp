#include "dw/primes.hpp"

#include <algorithm>

namespace dw {

// ------------------------------------------------------------------ groups

Group Group::of_table(std::vector<std::vector<int>> table) {
	int n = (int)table.size();
	if (n == 0) throw Error("BadGroup", "empty multiplication table");
	for (auto& row : table) {
		if ((int)row.size() != n)
			throw Error("BadGroup", "table is not square");
		for (int x : row)
			if (x < 0 || x >= n)
				throw Error("BadGroup", "entry out of range");
	}
	for (int a = 0; a < n; a++)
		if (table[0][a] != a || table[a][0] != a)
			throw Error("BadGroup", "element 0 is not an identity");
	for (int a = 0; a < n; a++) {
		bool inv = false;
		for (int b = 0; b < n; b++) inv = inv || table[a][b] == 0;
		if (!inv)
			throw Error("BadGroup",
			            "element " + std::to_string(a) + " has no inverse");
	}
	for (int a = 0; a < n; a++)
		for (int b = 0; b < n; b++)
			for (int c = 0; c < n; c++)
				if (table[table[a][b]][c] != table[a][table[b][c]])
					throw Error("BadGroup", "table is not associative");
	Group g;
	g.table_ = std::move(table);
	return g;
}

Group Group::cyclic(int n) {
	std::vector<std::vector<int>> t(n, std::vector<int>(n));
	for (int a = 0; a < n; a++)
		for (int b = 0; b < n; b++) t[a][b] = (a + b) % n;
	return of_table(std::move(t));
}

int Group::inverse(int a) const {
	for (int b = 0; b < size(); b++)
		if (op(a, b) == 0) return b;
	throw Error("BadGroup", "no inverse");
}

SortP Group::letter_sort() const {
	SortP s = unit_sort("0");
	for (int i = 1; i < size(); i++)
		s = sum_sort(s, unit_sort(std::to_string(i)));
	return s;
}

Value Group::letter(int g) const {
	auto c = coerce(vu(std::to_string(g)), letter_sort());
	if (!c) throw Error("BadGroup", "element out of range");
	return *c;
}

int Group::element(const Value& letter) const {
	return std::stoi(flatten(letter).name);
}

// ------------------------------------------------------------ constructors

PrimeFn prime_lphom(PatternFn f) {
	PrimeFn p;
	p.tag = PrimeFn::LpHom;
	p.fn = std::move(f);
	return p;
}

PrimeFn prime_hom(PatternFn f) {
	if (f.cod->kind != Sort::List)
		throw Error("SortMismatch", "homomorphism image must be a list sort");
	PrimeFn p;
	p.tag = PrimeFn::Hom;
	p.fn = std::move(f);
	return p;
}

PrimeFn prime_classical_mealy(TwoWaySUT m) {
	if (m.kind != Kind::Mealy)
		throw Error("KindMismatch", "classical prime needs a Mealy machine");
	if (atom_dim(m.input_sort) != 0 || atom_dim(m.output_sort) != 0)
		throw Error("SortMismatch", "classical Mealy machine must be atomless");
	auto v = validate(m);
	if (!v.empty()) throw Error("BadMachine", v.front());
	PrimeFn p;
	p.tag = PrimeFn::ClassicalMealy;
	p.mealy = std::make_shared<TwoWaySUT>(std::move(m));
	return p;
}

PrimeFn prime_atom_propagation() {
	PrimeFn p;
	p.tag = PrimeFn::AtomPropagation;
	return p;
}

PrimeFn prime_group(Group g) {
	PrimeFn p;
	p.tag = PrimeFn::GroupTransducer;
	p.group = std::move(g);
	return p;
}

PrimeFn prime_flipflop() {
	PrimeFn p;
	p.tag = PrimeFn::FlipFlop;
	return p;
}

PrimeFn prime_map_reverse(SortP sigma) {
	PrimeFn p;
	p.tag = PrimeFn::MapReverse;
	p.sigma = std::move(sigma);
	return p;
}

PrimeFn prime_map_duplicate(SortP sigma) {
	PrimeFn p;
	p.tag = PrimeFn::MapDuplicate;
	p.sigma = std::move(sigma);
	return p;
}

PrimeFn prime_append_endmark(SortP sigma) {
	PrimeFn p;
	p.tag = PrimeFn::AppendEndmark;
	p.sigma = std::move(sigma);
	return p;
}

PrimeFn prime_par_with_id(PrimeFn inner, SortP id_sort) {
	PrimeFn p;
	p.tag = PrimeFn::ParWithId;
	p.inner = std::make_shared<PrimeFn>(std::move(inner));
	p.id_sort = std::move(id_sort);
	return p;
}

PatternFn identity_fn(const SortP& s) {
	std::vector<PatternCase> cs;
	for (const Value& rep : orbit_reps(s)) cs.push_back({rep, rep});
	return PatternFn::make(s, s, std::move(cs));
}

SortP PrimeFn::dom() const {
	switch (tag) {
	case LpHom:
	case Hom: return fn.dom;
	case ClassicalMealy: return mealy->input_sort;
	case AtomPropagation:
		return parse_sort("A+unit(eps)+unit(down)");
	case GroupTransducer: return group.letter_sort();
	case FlipFlop: return parse_sort("unit(a)+unit(b)+unit(1)");
	case MapReverse:
	case MapDuplicate: return sum_sort(sigma, unit_sort("sep"));
	case AppendEndmark: return sigma;
	case ParWithId: return prod_sort(inner->dom(), id_sort);
	}
	return nullptr;
}

SortP PrimeFn::cod() const {
	switch (tag) {
	case LpHom: return fn.cod;
	case Hom: return fn.cod->left;
	case ClassicalMealy: return mealy->output_sort;
	case AtomPropagation: return parse_sort("A+unit(bot)");
	case GroupTransducer: return group.letter_sort();
	case FlipFlop: return parse_sort("unit(a)+unit(b)");
	case MapReverse:
	case MapDuplicate: return sum_sort(sigma, unit_sort("sep"));
	case AppendEndmark: return sum_sort(sigma, unit_sort("rend"));
	case ParWithId: return prod_sort(inner->cod(), id_sort);
	}
	return nullptr;
}

bool PrimeFn::length_preserving() const {
	switch (tag) {
	case LpHom:
	case ClassicalMealy:
	case AtomPropagation:
	case GroupTransducer:
	case FlipFlop: return true;
	case MapReverse: return true;
	case ParWithId: return inner->length_preserving();
	default: return false;
	}
}

// ------------------------------------------------------------- evaluation

static void check_word(const Word& w, const SortP& s) {
	for (auto& l : w)
		if (!typechecks(l, s))
			throw Error("SortMismatch", "letter " + show_value(l) +
			                                " is not of sort " + show_sort(s));
}

Word eval_prime(const PrimeFn& p, const Word& w) {
	check_word(w, p.dom());
	Word out;
	switch (p.tag) {
	case PrimeFn::LpHom:
		for (auto& l : w) out.push_back(p.fn(l));
		break;
	case PrimeFn::Hom:
		for (auto& l : w)
			for (auto& o : p.fn(l).kids) out.push_back(o);
		break;
	case PrimeFn::ClassicalMealy: {
		RunResult r = run(*p.mealy, w);
		if (r.tag != RunResult::Accepted)
			throw Error("BadMachine", "classical Mealy machine did not accept");
		out = r.output;
		break;
	}
	case PrimeFn::AtomPropagation: {
		std::optional<Atom> reg;
		SortP cod = p.cod();
		for (auto& l : w) {
			Value f = flatten(l);
			if (l.side == 1) {  // down
				out.push_back(reg ? *coerce(va(*reg), cod)
				                  : *coerce(vu("bot"), cod));
				reg = std::nullopt;
			} else {
				if (f.kind == Value::AtomV) reg = f.atom;
				out.push_back(*coerce(vu("bot"), cod));
			}
		}
		break;
	}
	case PrimeFn::GroupTransducer: {
		int acc = 0;
		for (auto& l : w) {
			acc = p.group.op(acc, p.group.element(l));
			out.push_back(p.group.letter(acc));
		}
		break;
	}
	case PrimeFn::FlipFlop: {
		std::string last = "a";
		SortP cod = p.cod();
		for (auto& l : w) {
			out.push_back(*coerce(vu(last), cod));
			std::string name = flatten(l).name;
			if (name != "1") last = name;
		}
		break;
	}
	case PrimeFn::MapReverse:
	case PrimeFn::MapDuplicate: {
		Word block;
		auto flush = [&]() {
			if (p.tag == PrimeFn::MapReverse) {
				for (auto it = block.rbegin(); it != block.rend(); ++it)
					out.push_back(*it);
			} else {
				for (auto& x : block) out.push_back(x);
				for (auto& x : block) out.push_back(x);
			}
			block.clear();
		};
		for (auto& l : w) {
			if (l.side == 1) {  // separator
				flush();
				out.push_back(l);
			} else {
				block.push_back(l);
			}
		}
		flush();
		break;
	}
	case PrimeFn::AppendEndmark: {
		SortP cod = p.cod();
		for (auto& l : w) out.push_back(vin(0, l));
		out.push_back(*coerce(vu("rend"), cod));
		break;
	}
	case PrimeFn::ParWithId: {
		Word left;
		for (auto& l : w) left.push_back(l.kids[0]);
		Word lo = eval_prime(*p.inner, left);
		if (lo.size() != w.size())
			throw Error("LengthMismatch",
			            "parallel operand is not length-preserving here");
		for (size_t i = 0; i < w.size(); i++)
			out.push_back(vp(lo[i], w[i].kids[1]));
		break;
	}
	}
	return out;
}

// --------------------------------------------------------------- pipelines

Pipeline pipe_prime(PrimeFn p) {
	Pipeline pl;
	pl.tag = Pipeline::Prime;
	pl.prime = std::make_shared<PrimeFn>(std::move(p));
	return pl;
}

Pipeline pipe_seq(std::vector<Pipeline> kids) {
	if (kids.empty()) throw Error("BadPipeline", "empty sequence");
	for (size_t i = 0; i + 1 < kids.size(); i++)
		if (!same_sort(kids[i].cod(), kids[i + 1].dom()))
			throw Error("SortMismatch",
			            "stage " + std::to_string(i) + " outputs " +
			                show_sort(kids[i].cod()) + " but stage " +
			                std::to_string(i + 1) + " expects " +
			                show_sort(kids[i + 1].dom()));
	Pipeline pl;
	pl.tag = Pipeline::Seq;
	pl.kids = std::move(kids);
	return pl;
}

Pipeline pipe_par(std::vector<Pipeline> kids) {
	if (kids.empty()) throw Error("BadPipeline", "empty parallel");
	Pipeline pl;
	pl.tag = Pipeline::Par;
	pl.kids = std::move(kids);
	return pl;
}

SortP Pipeline::dom() const {
	switch (tag) {
	case Prime: return prime->dom();
	case Seq: return kids.front().dom();
	case Par: {
		SortP s = kids.back().dom();
		for (int i = (int)kids.size() - 2; i >= 0; i--)
			s = prod_sort(kids[i].dom(), s);
		return s;
	}
	}
	return nullptr;
}

SortP Pipeline::cod() const {
	switch (tag) {
	case Prime: return prime->cod();
	case Seq: return kids.back().cod();
	case Par: {
		SortP s = kids.back().cod();
		for (int i = (int)kids.size() - 2; i >= 0; i--)
			s = prod_sort(kids[i].cod(), s);
		return s;
	}
	}
	return nullptr;
}

Word eval_pipeline(const Pipeline& p, const Word& w) {
	switch (p.tag) {
	case Pipeline::Prime: return eval_prime(*p.prime, w);
	case Pipeline::Seq: {
		Word cur = w;
		for (auto& k : p.kids) cur = eval_pipeline(k, cur);
		return cur;
	}
	case Pipeline::Par: {
		check_word(w, p.dom());
		if (p.kids.size() == 1) return eval_pipeline(p.kids[0], w);
		Word left, rest;
		for (auto& l : w) {
			left.push_back(l.kids[0]);
			rest.push_back(l.kids[1]);
		}
		Pipeline tail = pipe_par(
		    std::vector<Pipeline>(p.kids.begin() + 1, p.kids.end()));
		Word lo = eval_pipeline(p.kids[0], left);
		Word ro = eval_pipeline(tail, rest);
		if (lo.size() != w.size() || ro.size() != w.size())
			throw Error("LengthMismatch",
			            "parallel operand is not length-preserving here");
		Word out;
		for (size_t i = 0; i < w.size(); i++)
			out.push_back(vp(lo[i], ro[i]));
		return out;
	}
	}
	throw Error("BadPipeline", "unreachable");
}

// ------------------------------------------------------------------ JSON

nlohmann::json prime_to_json(const PrimeFn& p) {
	switch (p.tag) {
	case PrimeFn::LpHom:
		return {{"tag", "lphom"},
		        {"dom", show_sort(p.fn.dom)},
		        {"cod", show_sort(p.fn.cod)},
		        {"fn", patternfn_to_json(p.fn)}};
	case PrimeFn::Hom:
		return {{"tag", "hom"},
		        {"dom", show_sort(p.fn.dom)},
		        {"cod", show_sort(p.fn.cod->left)},
		        {"fn", patternfn_to_json(p.fn)}};
	case PrimeFn::ClassicalMealy:
		return {{"tag", "classicalmealy"}, {"machine", machine_to_json(*p.mealy)}};
	case PrimeFn::AtomPropagation: return {{"tag", "atompropagation"}};
	case PrimeFn::GroupTransducer:
		return {{"tag", "grouptransducer"}, {"table", p.group.table()}};
	case PrimeFn::FlipFlop: return {{"tag", "flipflop"}};
	case PrimeFn::MapReverse:
		return {{"tag", "mapreverse"}, {"sigma", show_sort(p.sigma)}};
	case PrimeFn::MapDuplicate:
		return {{"tag", "mapduplicate"}, {"sigma", show_sort(p.sigma)}};
	case PrimeFn::AppendEndmark:
		return {{"tag", "appendendmark"}, {"sigma", show_sort(p.sigma)}};
	case PrimeFn::ParWithId:
		return {{"tag", "parwithid"},
		        {"inner", prime_to_json(*p.inner)},
		        {"id_sort", show_sort(p.id_sort)}};
	}
	return nullptr;
}

PrimeFn prime_from_json(const nlohmann::json& j) {
	std::string tag = j.at("tag").get<std::string>();
	if (tag == "lphom" || tag == "hom") {
		SortP dom = parse_sort(j.at("dom").get<std::string>());
		SortP cod = parse_sort(j.at("cod").get<std::string>());
		if (tag == "hom") cod = list_sort(cod);
		PatternFn f = patternfn_from_json(j.at("fn"), dom, cod);
		return tag == "lphom" ? prime_lphom(std::move(f))
		                      : prime_hom(std::move(f));
	}
	if (tag == "classicalmealy")
		return prime_classical_mealy(machine_from_json(j.at("machine")));
	if (tag == "atompropagation") return prime_atom_propagation();
	if (tag == "grouptransducer")
		return prime_group(Group::of_table(
		    j.at("table").get<std::vector<std::vector<int>>>()));
	if (tag == "flipflop") return prime_flipflop();
	if (tag == "mapreverse")
		return prime_map_reverse(parse_sort(j.at("sigma").get<std::string>()));
	if (tag == "mapduplicate")
		return prime_map_duplicate(
		    parse_sort(j.at("sigma").get<std::string>()));
	if (tag == "appendendmark")
		return prime_append_endmark(
		    parse_sort(j.at("sigma").get<std::string>()));
	if (tag == "parwithid")
		return prime_par_with_id(
		    prime_from_json(j.at("inner")),
		    parse_sort(j.at("id_sort").get<std::string>()));
	throw Error("ParseError", "unknown prime tag '" + tag + "'");
}

nlohmann::json pipeline_to_json(const Pipeline& p) {
	switch (p.tag) {
	case Pipeline::Prime: return {{"prime", prime_to_json(*p.prime)}};
	case Pipeline::Seq:
	case Pipeline::Par: {
		nlohmann::json arr = nlohmann::json::array();
		for (auto& k : p.kids) arr.push_back(pipeline_to_json(k));
		return {{p.tag == Pipeline::Seq ? "seq" : "par", arr}};
	}
	}
	return nullptr;
}

Pipeline pipeline_from_json(const nlohmann::json& j) {
	if (j.contains("prime")) return pipe_prime(prime_from_json(j.at("prime")));
	const char* key = j.contains("seq") ? "seq" : "par";
	if (!j.contains(key)) throw Error("ParseError", "unknown pipeline node");
	std::vector<Pipeline> kids;
	for (auto& k : j.at(key)) kids.push_back(pipeline_from_json(k));
	return std::string(key) == "seq" ? pipe_seq(std::move(kids))
	                                 : pipe_par(std::move(kids));
}

}  // namespace dw
