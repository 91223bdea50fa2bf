// End-to-end acceptance suite: one pass/fail line per criterion.
// Exit code is the number of failed criteria.

#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "dw/equiv.hpp"
#include "dw/fixtures.hpp"
#include "dw/monoid.hpp"

using namespace dw;

static std::vector<std::string> errs;

static void require(bool cond, const std::string& what) {
	if (!cond) errs.push_back(what);
}

static std::string cli(const std::string& args) {
	std::string cmd = std::string(DW_CLI) + " " + args + " 2>/dev/null";
	FILE* p = popen(cmd.c_str(), "r");
	if (!p) return "<popen failed>";
	std::string out;
	char buf[4096];
	size_t n;
	while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
	pclose(p);
	return out;
}

static std::string corpus(const std::string& name) {
	return std::string(DW_CORPUS_DIR) + "/" + name;
}

// ---------------------------------------------------------------- criteria

static void golden_examples() {
	auto expect = [&](const std::string& args, const std::string& want) {
		std::string got = cli(args);
		require(got == want, "`" + args + "` printed " + got);
	};
	expect("run --machine " + corpus("atomprop.json") +
	           " --input '#1,#2,eps,eps,down,down,#3,eps,eps,down,eps,down'",
	       "{\"output\":\"bot,bot,bot,bot,#2,bot,bot,bot,bot,#3,bot,bot\","
	       "\"tag\":\"output\"}\n");
	expect("eval-pipeline --pipeline " + corpus("group_z3.prime.json") +
	           " --input '1,2,0,0,2,1,0,1,1,2,2'",
	       "{\"output\":\"1,0,0,0,2,0,0,1,2,1,0\",\"tag\":\"output\"}\n");
	expect("eval-pipeline --pipeline " + corpus("flipflop.prime.json") +
	           " --input '1,1,b,1,1,b,1,1,a,b,b'",
	       "{\"output\":\"a,a,a,b,b,b,b,b,b,a,b\",\"tag\":\"output\"}\n");
	expect("eval-pipeline --pipeline " + corpus("mapreverse.prime.json") +
	           " --input '#1,#2,sep,sep,#3,#4,#5,sep,#6,#7,#8,sep,#9'",
	       "{\"output\":\"#2,#1,sep,sep,#5,#4,#3,sep,#8,#7,#6,sep,#9\","
	       "\"tag\":\"output\"}\n");
	expect("eval-pipeline --pipeline " + corpus("mapduplicate.prime.json") +
	           " --input '#1,#2,sep,sep,#3,#4,#5,sep,#6,#7,#8,sep,#9'",
	       "{\"output\":\"#1,#2,#1,#2,sep,sep,#3,#4,#5,#3,#4,#5,sep,"
	       "#6,#7,#8,#6,#7,#8,sep,#9,#9\",\"tag\":\"output\"}\n");
	expect("deatomise --input '#3,#1,#1,#3'",
	       "{\"deatomised\":\"◇◇◇∘◇∘◇"
	       "∘◇◇◇∘\"}\n");
}

static std::vector<std::pair<std::string, Runner>> bundled_runners() {
	SortP a = atom_sort();
	SortP sep = unit_sort("sep");
	std::vector<std::pair<std::string, Runner>> rs;
	rs.emplace_back("atomprop", runner_machine(atom_propagation_mealy()));
	rs.emplace_back("mapreverse.2way", runner_machine(map_reverse_2way()));
	rs.emplace_back("first_last", runner_machine(first_last_automaton()));
	rs.emplace_back("first_letter_multiuse",
	                runner_machine(first_letter_multiuse()));
	rs.emplace_back("three_letters", runner_machine(three_letters_automaton()));
	rs.emplace_back("flipflop.prime", runner_prime(prime_flipflop()));
	rs.emplace_back("group_z2.prime", runner_prime(prime_group(Group::cyclic(2))));
	rs.emplace_back("group_z3.prime", runner_prime(prime_group(Group::cyclic(3))));
	rs.emplace_back("atomprop.prime", runner_prime(prime_atom_propagation()));
	rs.emplace_back("mapreverse.prime", runner_prime(prime_map_reverse(a)));
	rs.emplace_back("mapduplicate.prime", runner_prime(prime_map_duplicate(a)));
	rs.emplace_back("mapreverse.rlf", runner_rlf(rlf_map_reverse(a, sep)));
	rs.emplace_back("mapduplicate.rlf", runner_rlf(rlf_map_duplicate(a, sep)));
	rs.emplace_back("three_distinct.rlf", runner_rlf(three_distinct_letters_rlf()));
	rs.emplace_back("mapreverse.sst", runner_sst(map_reverse_sst()));
	rs.emplace_back("mapduplicate.sst", runner_sst(map_duplicate_sst()));
	rs.emplace_back("copyful_doubler.sst", runner_sst(copyful_doubler()));
	return rs;
}

static void equivariance_suite() {
	std::mt19937_64 rng(101);
	for (auto& [name, r] : bundled_runners()) {
		for (int i = 0; i < 1000; i++) {
			Word w = random_word(r.dom(), (int)(rng() % 9), {1, 2, 3, 4, 5},
			                     rng);
			Perm perm = random_perm(least_support(w), rng);
			RunnerOutcome before = r(w);
			RunnerOutcome after = r(apply_perm(perm, w));
			bool ok = before.tag == after.tag &&
			          (before.tag != RunnerOutcome::Out ||
			           apply_perm(perm, before.out) == after.out);
			if (!ok) {
				require(false, name + " is not equivariant on " + show_word(w));
				break;
			}
		}
	}
}

static void single_use_suite() {
	std::mt19937_64 rng(103);
	for (TwoWaySUT m : {atom_propagation_mealy(), map_reverse_2way(),
	                    first_last_automaton()}) {
		for (int i = 0; i < 40; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 9), {1, 2, 3},
			                     rng);
			std::vector<TraceStep> trace;
			run(m, w, &trace);
			for (auto& s : trace) {
				if (s.question == Question::RegEq)
					for (auto& reg : s.question_regs)
						require(!s.val_after_question.at(reg).has_value(),
						        "register " + reg + " kept its value past a "
						        "comparison");
				if (s.action == Action::Output ||
				    s.action == Action::OutputMove)
					for (auto& reg : s.action_regs)
						require(!s.val_after.at(reg).has_value(),
						        "register " + reg + " kept its value past an "
						        "output");
			}
			require(audit_single_use(m, w).tag != RunResult::SingleUseViolation,
			        "audit flagged a single-use fixture");
		}
	}
	RunResult audited =
	    audit_single_use(first_letter_multiuse(), {va(1), va(2), va(1)});
	require(audited.tag == RunResult::SingleUseViolation,
	        "audit missed the multiple-use machine");
}

static void cross_model_suite() {
	SortP a = atom_sort();
	std::vector<Runner> rs = {runner_rlf(rlf_map_reverse(a, unit_sort("sep"))),
	                          runner_prime(prime_map_reverse(a)),
	                          runner_machine(map_reverse_2way()),
	                          runner_sst(map_reverse_sst())};
	SortP letter = rs[0].dom();
	auto agree = [&](const Word& w) {
		RunnerOutcome base = rs[0](w);
		for (size_t i = 1; i < rs.size(); i++)
			if (!(rs[i](w) == base)) {
				require(false, "models disagree on " + show_word(w));
				return;
			}
	};
	for (int len = 0; len <= 6; len++)
		for (const Word& w : canonical_words(letter, len)) agree(w);
	std::mt19937_64 rng(107);
	for (int i = 0; i < 500; i++)
		agree(random_word(letter, (int)(rng() % 21), {1, 2, 3, 4, 5, 6}, rng));
}

static void monoid_suite() {
	std::mt19937_64 rng(109);
	std::vector<TwoWaySUT> ms = {map_reverse_2way(), first_last_automaton(),
	                             first_letter_multiuse()};
	for (const TwoWaySUT& m : ms) {
		ShepherdsonProfile e = profile_of(m, {});
		for (int i = 0; i < 100; i++) {
			Word u = random_word(m.input_sort, (int)(rng() % 4), {1, 2, 3},
			                     rng);
			Word v = random_word(m.input_sort, (int)(rng() % 4), {1, 2, 3},
			                     rng);
			Word uv = u;
			uv.insert(uv.end(), v.begin(), v.end());
			ShepherdsonProfile pu = profile_of(m, u), pv = profile_of(m, v);
			require(compose_profiles(pu, pv) == profile_of(m, uv),
			        "profile composition missed a concatenation");
			require(compose_profiles(e, pu) == pu &&
			            compose_profiles(pu, e) == pu,
			        "empty profile is not a unit");
		}
		for (int i = 0; i < 50; i++) {
			ShepherdsonProfile p = profile_of(
			    m, random_word(m.input_sort, (int)(rng() % 3), {1, 2}, rng));
			ShepherdsonProfile q = profile_of(
			    m, random_word(m.input_sort, (int)(rng() % 3), {1, 2}, rng));
			ShepherdsonProfile r = profile_of(
			    m, random_word(m.input_sort, (int)(rng() % 3), {1, 2}, rng));
			require(compose_profiles(compose_profiles(p, q), r) ==
			            compose_profiles(p, compose_profiles(q, r)),
			        "profile composition is not associative");
		}
	}
}

static void support_suite() {
	std::mt19937_64 rng(113);
	for (TwoWaySUT m : {atom_propagation_mealy(), map_reverse_2way(),
	                    first_last_automaton()}) {
		long long bound = support_bound(m);
		for (int i = 0; i < 10; i++) {
			Word w = random_word(m.input_sort, 12, {1, 2, 3, 4, 5, 6}, rng);
			require((long long)minimal_support(profile_of(m, w)).size() <=
			            bound,
			        "single-use profile support exceeded the bound");
		}
	}
	TwoWaySUT mu = first_letter_multiuse();
	std::vector<size_t> sizes;
	for (int d = 1; d <= 5; d++) {
		Word w;
		for (int i = 1; i <= d; i++) w.push_back(va((Atom)i));
		sizes.push_back(minimal_support(profile_of(mu, w)).size());
	}
	for (size_t i = 1; i < sizes.size(); i++)
		require(sizes[i] > sizes[i - 1],
		        "multiple-use support did not grow with distinct letters");
}

static long long max_stay(const TwoWaySUT& m, const Word& w) {
	std::vector<TraceStep> trace;
	run(m, w, &trace);
	long long best = 0, cur = 0;
	int pos = -1;
	for (auto& s : trace) {
		cur = s.pos == pos ? cur + 1 : 1;
		pos = s.pos;
		best = std::max(best, cur);
	}
	return best;
}

static void mealy_composition_suite() {
	struct Pair {
		PrimeFn a, b;
	};
	std::vector<Pair> pairs = {
	    {prime_lphom(identity_fn(parse_sort("A+unit(eps)+unit(down)"))),
	     prime_atom_propagation()},
	    {prime_atom_propagation(),
	     prime_lphom(identity_fn(parse_sort("A+unit(bot)")))},
	    {prime_group(Group::cyclic(3)), prime_group(Group::cyclic(3))},
	};
	for (auto& pr : pairs) {
		MealySUT comp = compose_mealy(as_mealy(pr.a), as_mealy(pr.b));
		long long bound = stay_bound(comp);
		for (int len = 0; len <= 5; len++)
			for (const Word& w : canonical_words(pr.a.dom(), len)) {
				RunResult r = run(comp, w);
				require(r.tag == RunResult::Accepted &&
				            r.output == eval_prime(pr.b, eval_prime(pr.a, w)),
				        "composed Mealy machine disagrees with staged "
				        "evaluation on " + show_word(w));
				require(max_stay(comp, w) <= bound,
				        "composed machine overstayed its bound");
			}
	}
}

static void post_composition_suite() {
	auto check_post = [&](const SSTMachine& m, const PrimeFn& g) {
		SSTMachine comp = post_compose_prime(m, g);
		for (int len = 0; len <= 6; len++)
			for (const Word& w : canonical_words(m.input_sort, len)) {
				RunResult base = eval_sst(m, w);
				RunResult r = eval_sst(comp, w);
				bool ok = base.tag == RunResult::Accepted &&
				          r.tag == RunResult::Accepted &&
				          r.output == eval_prime(g, base.output);
				if (!ok) {
					require(false, "post-composition disagrees on " +
					                   show_word(w));
					return;
				}
			}
	};
	SortP a = atom_sort();
	SortP asep = parse_sort("A+unit(sep)");
	for (auto g : {prime_map_reverse(a), prime_map_duplicate(a)}) {
		check_post(identity_sst(asep), g);
		check_post(map_reverse_sst(), g);
	}
	PrimeFn ap = prime_atom_propagation();
	check_post(identity_sst(ap.dom()), ap);
	check_post(reverse_sst(ap.dom()), ap);
	for (auto g : {prime_group(Group::cyclic(3)), prime_flipflop()}) {
		check_post(identity_sst(g.dom()), g);
		check_post(reverse_sst(g.dom()), g);
	}
	PrimeFn lp = prime_lphom(identity_fn(a));
	PrimeFn two = prime_hom(PatternFn::make(
	    a, list_sort(a), {{va(0), vl({va(0), va(0)})}}));
	check_post(identity_sst(a), lp);
	check_post(reverse_sst(a), lp);
	check_post(identity_sst(a), two);
	check_post(reverse_sst(a), two);
}

static void run_graph_suite() {
	std::mt19937_64 rng(127);
	for (TwoWaySUT m : {atom_propagation_mealy(), map_reverse_2way(),
	                    first_last_automaton()}) {
		int short_max = 0, long_max = 0, accepted = 0;
		for (int i = 0; i < 200; i++) {
			int len = (int)(rng() % 31);
			Word w = random_word(m.input_sort, len, {1, 2, 3, 4}, rng);
			RunResult r = run(m, w);
			if (r.tag != RunResult::Accepted) continue;
			accepted++;
			RunGraph g = run_graph(m, w);
			require(g.replay() == r.output,
			        "run graph replay lost the run's output");
			(len <= 15 ? short_max : long_max) =
			    std::max(len <= 15 ? short_max : long_max, g.width());
		}
		require(accepted > 50, "too few accepting runs sampled");
		require(long_max <= short_max,
		        "run graph width grew with input length");
	}
	for (SSTMachine m : {map_reverse_sst(), map_duplicate_sst(),
	                     identity_sst(parse_sort("A+unit(sep)")),
	                     copyful_doubler()}) {
		for (int i = 0; i < 50; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 10), {1, 2, 3},
			                     rng);
			RunResult r = eval_sst(m, w);
			if (r.tag != RunResult::Accepted) continue;
			require(register_forest(m, w).dfs() == r.output,
			        "register forest walk lost the SST output");
		}
	}
}

static void adjacency_suite() {
	auto suffixes = [](int top) {
		Word w;
		for (int len = 1; len <= top; len++)
			for (int d = 0; d < len; d++) w.push_back(va((Atom)(top - d)));
		return w;
	};
	// 554543543254321 has 4 distinct neighbours of 5: beyond any 1-register
	// budget; the same construction over 1..9 exceeds the 2-register budget
	require(!adjacency_letter_check(suffixes(5), va(5), 1),
	        "the 5-suffix output passed the 1-register budget");
	require(!adjacency_letter_check(suffixes(9), va(9), 2),
	        "the 9-suffix output passed the 2-register budget");
	std::mt19937_64 rng(131);
	for (auto m : {map_reverse_sst(), map_duplicate_sst(),
	               identity_sst(parse_sort("A+unit(sep)"))}) {
		int k = (int)m.string_registers.size();
		for (int i = 0; i < 50; i++) {
			Word w = random_word(m.input_sort, (int)(rng() % 14), {1, 2, 3},
			                     rng);
			Value fresh = *coerce(va(77), m.input_sort);
			w.push_back(fresh);
			RunResult r = eval_sst(m, w);
			require(r.tag == RunResult::Accepted &&
			            adjacency_letter_check(r.output, fresh, k),
			        "a single-use fixture broke the adjacency bound");
		}
	}
}

// ------------------------------------------------------------------ harness

int main() {
	struct Criterion {
		std::string title;
		std::function<void()> body;
	};
	std::vector<Criterion> criteria = {
	    {"golden examples byte-identical via the CLI", golden_examples},
	    {"equivariance on 1000 (word, permutation) pairs per bundled model",
	     equivariance_suite},
	    {"single-use traces and the audit", single_use_suite},
	    {"map reverse agrees across all four models", cross_model_suite},
	    {"profile composition is a monoid homomorphism", monoid_suite},
	    {"profile support bounds", support_suite},
	    {"Mealy composition matches staged evaluation", mealy_composition_suite},
	    {"SST post-composition matches staged evaluation",
	     post_composition_suite},
	    {"run graph width stability and replay", run_graph_suite},
	    {"adjacency invariant of the last letter", adjacency_suite},
	};
	int failed = 0;
	for (size_t i = 0; i < criteria.size(); i++) {
		errs.clear();
		try {
			criteria[i].body();
		} catch (const std::exception& e) {
			errs.push_back(std::string("exception: ") + e.what());
		}
		std::cout << "criterion " << i + 1 << " — " << criteria[i].title
		          << ": ";
		if (errs.empty()) {
			std::cout << "PASS\n";
		} else {
			failed++;
			std::cout << "FAIL (" << errs.size() << " errors; first: "
			          << errs[0] << ")\n";
		}
	}
	return failed;
}
