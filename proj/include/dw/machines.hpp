#pragma once

// Two-way single-use transducers and their special cases (one-way
// transducers, two-way/one-way automata, Mealy machines): syntax,
// validation, interpreter with loop detection, single-use auditing,
// run graphs, and the stay-in-place bound.

#include <json.hpp>

#include "dw/atoms.hpp"

namespace dw {

enum class Kind { TwoWay, OneWay, Automaton2W, Automaton1W, Mealy };

std::string show_kind(Kind k);
Kind parse_kind(const std::string& s);

struct Question {
	enum Tag { LetterPred, RegEq } tag = LetterPred;
	PatternFn pred;       // LetterPred: ext letter sort -> unit(yes)+unit(no)
	std::string r1, r2;   // RegEq
};

struct Action {
	enum Tag { Store, Output, OutputMove, MoveLeft, MoveRight, Accept,
		       Reject, Nop } tag = Nop;
	std::string reg;                 // Store target
	PatternFn fn;                    // Store: ext letter -> A+bot
	                                 // Output: register tuple -> output sort
	std::vector<std::string> regs;   // Output sources, pairwise distinct
};

struct Branch {
	std::string state;
	Action action;
};

struct Transition {
	Question question;
	Branch yes, no;
};

struct TwoWaySUT {
	Kind kind = Kind::TwoWay;
	SortP input_sort, output_sort;
	std::vector<std::string> states;
	std::string initial;
	std::vector<std::string> registers;
	std::map<std::string, Transition> delta;
	bool single_use = true;

	// letters as seen by questions and stores: bare input sort for Mealy,
	// input + {left end, right end} markers otherwise
	SortP ext_letter_sort() const;
	// domain of an output function reading k registers
	SortP output_fn_dom(int k) const;
};

using MealySUT = TwoWaySUT;

// sum wrappers for endmarkers in the extended letter sort
Value ext_of_letter(const Value& letter);
Value ext_lend();
Value ext_rend();

std::vector<std::string> validate(const TwoWaySUT& m);

struct RunResult {
	enum Tag { Accepted, Rejected, Loop, SingleUseViolation } tag = Rejected;
	Word output;
	int violation_step = -1;  // SingleUseViolation only
};

using Valuation = std::map<std::string, std::optional<Atom>>;

struct TraceStep {
	int step = 0;
	int pos = 0;  // tape position before the step (0 = left endmarker)
	std::string state;
	Question::Tag question = Question::LetterPred;
	std::vector<std::string> question_regs;  // RegEq operands
	Action::Tag action = Action::Nop;
	std::vector<std::string> action_regs;    // Store target / Output sources
	Valuation val_after_question;  // after the question's side effects
	Valuation val_after;           // after the whole step
};

RunResult run(const TwoWaySUT& m, const Word& w,
              std::vector<TraceStep>* trace = nullptr);
bool accepts(const TwoWaySUT& m, const Word& w);
// replays the run tracking consumed flags; flags the first read of a
// register whose value persists from an earlier read (multiple-use mode)
RunResult audit_single_use(const TwoWaySUT& m, const Word& w);

// number of states times (2 + atoms per input letter) ^ number of registers;
// no accepting run stays at one position longer than this many steps
long long stay_bound(const TwoWaySUT& m);

struct RunGraphRow {
	std::optional<Value> emitted;            // output letter, if any
	std::optional<std::pair<int, int>> next; // (column offset, target row)
};

struct RunGraph {
	std::vector<std::vector<RunGraphRow>> columns;  // one per tape position
	int width() const;
	// one letter per column: a list of (emitted letter or eps, pointer)
	Word as_word() const;
	// walk the graph from the initial row and collect emitted letters
	Word replay() const;
	static RunGraph of_word(const Word& w);
};

RunGraph run_graph(const TwoWaySUT& m, const Word& w);

// ------------------------------------------------------------------ JSON

nlohmann::json patternfn_to_json(const PatternFn& f);
PatternFn patternfn_from_json(const nlohmann::json& j, const SortP& dom,
                              const SortP& cod);

nlohmann::json machine_to_json(const TwoWaySUT& m);
TwoWaySUT machine_from_json(const nlohmann::json& j);

// prints flat when the coercion against `s` recovers the value exactly,
// otherwise prints with explicit injections
std::string show_for_sort(const Value& v, const SortP& s);
Value parse_for_sort(const std::string& text, const SortP& s);
Word parse_word_for_sort(const std::string& text, const SortP& s);
std::string show_word_for_sort(const Word& w, const SortP& s);

}  // namespace dw
