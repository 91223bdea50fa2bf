// Command-line front end: load machines, pipelines, expressions and SSTs
// from JSON files, run them on word literals, compare models, and export
// profiles, run graphs and register forests.  All results are JSON on
// stdout; diagnostics go to stderr.  Exit codes: 0 success (reject/loop
// are data, not failures), 1 model error, 2 usage or parse error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dw/equiv.hpp"
#include "dw/fixtures.hpp"
#include "dw/monoid.hpp"

#ifndef DW_CORPUS_DIR
#define DW_CORPUS_DIR "corpus"
#endif

using namespace dw;
using nlohmann::json;

namespace {

std::string corpus_dir() {
	if (const char* env = std::getenv("DATAWORDS_CORPUS")) return env;
	return DW_CORPUS_DIR;
}

json load_json(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		std::string fallback = corpus_dir() + "/" + path;
		in = std::ifstream(fallback);
		if (!in) throw Error("FileError", "cannot open " + path);
	}
	json j;
	in >> j;
	return j;
}

// model files are self-describing: machines carry a "kind", SSTs the kind
// "sst", pipelines one of "prime"/"seq"/"par", expressions a combinator "tag"
Runner load_runner(const std::string& path) {
	json j = load_json(path);
	if (j.contains("kind")) {
		if (j.at("kind") == "sst") return runner_sst(sst_from_json(j));
		return runner_machine(machine_from_json(j));
	}
	if (j.contains("prime") || j.contains("seq") || j.contains("par"))
		return runner_pipeline(pipeline_from_json(j));
	try {
		return runner_rlf(rlf_from_json(j));
	} catch (const Error& e) {
		if (e.kind == "SortMismatch" || e.kind == "TypeError") throw;
	}
	return runner_prime(prime_from_json(j));
}

// accepts both pipeline files and bare prime-function files
Pipeline load_pipeline(const std::string& path) {
	json j = load_json(path);
	if (j.contains("prime") || j.contains("seq") || j.contains("par"))
		return pipeline_from_json(j);
	return pipe_prime(prime_from_json(j));
}

// accepts both bare prime-function files and single-prime pipeline files
PrimeFn load_prime(const std::string& path) {
	json j = load_json(path);
	if (j.contains("prime")) return prime_from_json(j.at("prime"));
	return prime_from_json(j);
}

void emit(const json& j, const std::string& out_path) {
	if (out_path.empty()) {
		std::cout << j.dump() << "\n";
	} else {
		std::ofstream out(out_path);
		if (!out) throw Error("FileError", "cannot write " + out_path);
		out << j.dump(2) << "\n";
	}
}

json run_result_json(const RunResult& r, const SortP& out_sort,
                     bool acceptor) {
	switch (r.tag) {
	case RunResult::Accepted:
		if (acceptor) return {{"tag", "accept"}};
		return {{"tag", "output"},
		        {"output", show_word_for_sort(r.output, out_sort)}};
	case RunResult::Rejected: return {{"tag", "reject"}};
	case RunResult::Loop: return {{"tag", "loop"}};
	case RunResult::SingleUseViolation:
		return {{"tag", "single_use_violation"}, {"step", r.violation_step}};
	}
	return nullptr;
}

json equiv_report(const EquivResult& r, const SortP& letter,
                  std::optional<std::uint64_t> seed) {
	json j;
	j["verdict"] = r.equal ? "equal" : "counterexample";
	if (!r.equal) {
		j["counterexample"] = show_word_for_sort(r.counterexample, letter);
		j["left"] = r.left.show(nullptr);
		j["right"] = r.right.show(nullptr);
	}
	j["lengths_checked"] = r.lengths_checked;
	j["words_checked"] = r.words_checked;
	if (seed) j["seed"] = *seed;
	return j;
}

std::vector<Atom> parse_pool(const std::string& s) {
	std::vector<Atom> pool;
	std::stringstream ss(s);
	std::string item;
	while (std::getline(ss, item, ','))
		if (!item.empty()) pool.push_back((Atom)std::stoull(item));
	return pool;
}

int dispatch(int argc, char** argv) {
	CLI::App app{"transducers over data words: run, compare, export"};
	app.require_subcommand(1);

	std::string machine_path, pipeline_path, rlf_path, sst_path, prime_path;
	std::string a_path, b_path, input, out_path, sort_text = "A";
	std::string pool_text = "1,2,3,4,5";
	int max_len = 4, trials = 100;
	std::uint64_t seed = 0;

	auto add_input = [&](CLI::App* c) {
		c->add_option("--input", input, "word literal over the input sort");
	};
	auto add_out = [&](CLI::App* c) {
		c->add_option("--out", out_path, "write the result to a file");
	};

	CLI::App* run_cmd = app.add_subcommand("run", "run a two-way machine");
	run_cmd->add_option("--machine", machine_path)->required();
	add_input(run_cmd);

	CLI::App* evalp = app.add_subcommand("eval-pipeline", "evaluate a pipeline");
	evalp->add_option("--pipeline", pipeline_path)->required();
	add_input(evalp);

	CLI::App* evalr = app.add_subcommand("eval-rlf",
	                                     "evaluate a list-function expression");
	evalr->add_option("--rlf", rlf_path)->required();
	add_input(evalr);

	CLI::App* sstrun = app.add_subcommand("sst-run",
	                                      "run a streaming string transducer");
	sstrun->add_option("--sst", sst_path)->required();
	add_input(sstrun);

	CLI::App* sstc = app.add_subcommand(
	    "sst-compose", "post-compose an SST with a prime function");
	sstc->add_option("--sst", sst_path)->required();
	sstc->add_option("--prime", prime_path)->required();
	add_out(sstc);

	CLI::App* mealyc = app.add_subcommand(
	    "mealy-compose", "sequential product of two Mealy machines");
	mealyc->add_option("--a", a_path)->required();
	mealyc->add_option("--b", b_path)->required();
	add_out(mealyc);

	CLI::App* prof = app.add_subcommand("profile",
	                                    "boundary-behavior table on a word");
	prof->add_option("--machine", machine_path)->required();
	add_input(prof);

	CLI::App* supp = app.add_subcommand("support",
	                                    "least support of a word's profile");
	supp->add_option("--machine", machine_path)->required();
	add_input(supp);

	CLI::App* rg = app.add_subcommand("rungraph",
	                                  "run graph of an accepting run");
	rg->add_option("--machine", machine_path)->required();
	add_input(rg);

	CLI::App* forest = app.add_subcommand(
	    "forest", "string-register forest of an SST run");
	forest->add_option("--sst", sst_path)->required();
	add_input(forest);

	CLI::App* eq = app.add_subcommand(
	    "equiv", "compare two models on all canonical words");
	eq->add_option("--a", a_path)->required();
	eq->add_option("--b", b_path)->required();
	eq->add_option("--max-len", max_len);

	CLI::App* fz = app.add_subcommand("fuzz",
	                                  "compare two models on random words");
	fz->add_option("--a", a_path)->required();
	fz->add_option("--b", b_path)->required();
	fz->add_option("--max-len", max_len);
	fz->add_option("--trials", trials);
	fz->add_option("--seed", seed);
	fz->add_option("--pool", pool_text, "comma-separated atom pool");

	CLI::App* deat = app.add_subcommand(
	    "deatomise", "encode a word over the finite alphabet with diamonds");
	add_input(deat);
	deat->add_option("--sort", sort_text, "letter sort of the input");

	CLI::App* val = app.add_subcommand("validate", "check a model file");
	val->add_option("--machine", machine_path);
	val->add_option("--sst", sst_path);
	val->add_option("--pipeline", pipeline_path);
	val->add_option("--rlf", rlf_path);

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 2;
	}

	if (run_cmd->parsed()) {
		TwoWaySUT m = machine_from_json(load_json(machine_path));
		Word w = parse_word_for_sort(input, m.input_sort);
		bool acceptor = m.kind == Kind::Automaton1W ||
		                m.kind == Kind::Automaton2W;
		emit(run_result_json(run(m, w), m.output_sort, acceptor), out_path);
	} else if (evalp->parsed()) {
		Pipeline p = load_pipeline(pipeline_path);
		Word w = parse_word_for_sort(input, p.dom());
		emit({{"tag", "output"},
		      {"output", show_word_for_sort(eval_pipeline(p, w), p.cod())}},
		     out_path);
	} else if (evalr->parsed()) {
		RlfP e = rlf_from_json(load_json(rlf_path));
		auto [dom, cod] = typecheck(e);
		Value v = parse_for_sort(input, dom);
		emit({{"tag", "output"},
		      {"output", show_for_sort(eval_rlf(e, v), cod)}},
		     out_path);
	} else if (sstrun->parsed()) {
		SSTMachine m = sst_from_json(load_json(sst_path));
		Word w = parse_word_for_sort(input, m.input_sort);
		emit(run_result_json(eval_sst(m, w), m.output_sort, false), out_path);
	} else if (sstc->parsed()) {
		SSTMachine m = sst_from_json(load_json(sst_path));
		PrimeFn g = load_prime(prime_path);
		emit(sst_to_json(post_compose_prime(m, g)), out_path);
	} else if (mealyc->parsed()) {
		TwoWaySUT f = machine_from_json(load_json(a_path));
		TwoWaySUT g = machine_from_json(load_json(b_path));
		emit(machine_to_json(compose_mealy(f, g)), out_path);
	} else if (prof->parsed()) {
		TwoWaySUT m = machine_from_json(load_json(machine_path));
		Word w = parse_word_for_sort(input, m.input_sort);
		emit(profile_to_json(profile_of(m, w)), out_path);
	} else if (supp->parsed()) {
		TwoWaySUT m = machine_from_json(load_json(machine_path));
		Word w = parse_word_for_sort(input, m.input_sort);
		ShepherdsonProfile p = profile_of(m, w);
		std::vector<Atom> s = minimal_support(p);
		emit({{"support", s},
		      {"size", s.size()},
		      {"bound", support_bound(m)},
		      {"single_use", m.single_use}},
		     out_path);
	} else if (rg->parsed()) {
		TwoWaySUT m = machine_from_json(load_json(machine_path));
		Word w = parse_word_for_sort(input, m.input_sort);
		RunGraph g = run_graph(m, w);
		json cols = json::array();
		for (auto& col : g.columns) {
			json rows = json::array();
			for (auto& row : col) {
				json r;
				r["emitted"] = row.emitted
				                   ? json(show_for_sort(*row.emitted,
				                                        m.output_sort))
				                   : json(nullptr);
				r["next"] = row.next ? json({row.next->first,
				                             row.next->second})
				                     : json(nullptr);
				rows.push_back(std::move(r));
			}
			cols.push_back(std::move(rows));
		}
		emit({{"width", g.width()},
		      {"columns", cols},
		      {"replay", show_word_for_sort(g.replay(), m.output_sort)}},
		     out_path);
	} else if (forest->parsed()) {
		SSTMachine m = sst_from_json(load_json(sst_path));
		Word w = parse_word_for_sort(input, m.input_sort);
		RegisterForest f = register_forest(m, w);
		json nodes = json::array();
		for (auto& n : f.nodes)
			nodes.push_back(
			    {{"reg", n.reg},
			     {"step", n.step},
			     {"letters", show_word_for_sort(n.letters, m.output_sort)},
			     {"left", n.left},
			     {"right", n.right}});
		emit({{"root", f.root},
		      {"nodes", nodes},
		      {"output", show_word_for_sort(f.dfs(), m.output_sort)}},
		     out_path);
	} else if (eq->parsed()) {
		Runner a = load_runner(a_path), b = load_runner(b_path);
		EquivResult r = bounded_equiv(a, b, max_len);
		emit(equiv_report(r, a.dom(), std::nullopt), out_path);
	} else if (fz->parsed()) {
		Runner a = load_runner(a_path), b = load_runner(b_path);
		EquivResult r = fuzz(a, b, trials, max_len, parse_pool(pool_text),
		                     seed);
		emit(equiv_report(r, a.dom(), seed), out_path);
	} else if (deat->parsed()) {
		SortP letter = parse_sort(sort_text);
		Word w = parse_word_for_sort(input, letter);
		std::vector<Atom> atoms;
		for (auto& l : w) collect_atoms(l, atoms);
		emit({{"deatomised",
		       deatomise(Deatomisation::identity_for(atoms), w)}},
		     out_path);
	} else if (val->parsed()) {
		std::vector<std::string> violations;
		if (!machine_path.empty())
			violations = validate(machine_from_json(load_json(machine_path)));
		else if (!sst_path.empty())
			violations = validate_sst(sst_from_json(load_json(sst_path)));
		else if (!pipeline_path.empty())
			pipeline_from_json(load_json(pipeline_path)).dom();
		else if (!rlf_path.empty())
			typecheck(rlf_from_json(load_json(rlf_path)));
		else
			throw Error("UsageError", "validate needs a model flag");
		emit({{"valid", violations.empty()}, {"violations", violations}},
		     out_path);
		if (!violations.empty()) return 1;
	}
	return 0;
}

}  // namespace

int main(int argc, char** argv) {
	try {
		return dispatch(argc, argv);
	} catch (const Error& e) {
		std::cerr << e.what() << "\n";
		return e.kind == "ParseError" || e.kind == "UsageError" ? 2 : 1;
	} catch (const json::exception& e) {
		std::cerr << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << e.what() << "\n";
		return 1;
	}
}
