#pragma once

// Small toolkit for constructing machines programmatically: common pattern
// functions over the extended letter sort and a state/transition builder.

#include <algorithm>

#include "dw/machines.hpp"

namespace dw {

// letter predicate answering yes exactly on the orbits of the given flat
// guard literals (parsed against the extended letter sort)
PatternFn letter_pred(const SortP& ext, const std::vector<std::string>& yes);
// store the letter's atom when it has one, bot otherwise
PatternFn store_letter_atom(const SortP& ext);
// constant output letter, written as a flat literal
PatternFn output_const(const SortP& out, const std::string& lit);
// one-register output embedding the atom into the output sort
PatternFn output_reg_atom(const SortP& out);

struct MachineBuilder {
	TwoWaySUT m;
	SortP ext;

	explicit MachineBuilder(Kind kind, const std::string& in,
	                        const std::string& out) {
		m.kind = kind;
		m.input_sort = parse_sort(in);
		m.output_sort = parse_sort(out);
		ext = m.ext_letter_sort();
	}

	void state(const std::string& q) {
		if (std::find(m.states.begin(), m.states.end(), q) == m.states.end())
			m.states.push_back(q);
	}

	void add(const std::string& q, Question question, Branch yes, Branch no) {
		state(q);
		state(yes.state);
		state(no.state);
		m.delta[q] = {std::move(question), std::move(yes), std::move(no)};
	}

	// unconditional step: perform the action and go to `to`
	void step(const std::string& q, const std::string& to, Action a) {
		Question question;
		question.tag = Question::LetterPred;
		question.pred = letter_pred(ext, {});
		// both branches identical; the answer is always no
		add(q, std::move(question), {to, a}, {to, a});
	}

	void branch(const std::string& q, const std::vector<std::string>& yes_on,
	            Branch yes, Branch no) {
		Question question;
		question.tag = Question::LetterPred;
		question.pred = letter_pred(ext, yes_on);
		add(q, std::move(question), std::move(yes), std::move(no));
	}

	void regeq(const std::string& q, const std::string& r1,
	           const std::string& r2, Branch yes, Branch no) {
		Question question;
		question.tag = Question::RegEq;
		question.r1 = r1;
		question.r2 = r2;
		add(q, std::move(question), std::move(yes), std::move(no));
	}

	Action store(const std::string& r) {
		Action a;
		a.tag = Action::Store;
		a.reg = r;
		a.fn = store_letter_atom(ext);
		return a;
	}

	Action out_const(const std::string& lit, bool move) {
		Action a;
		a.tag = move ? Action::OutputMove : Action::Output;
		a.fn = output_const(m.output_sort, lit);
		return a;
	}

	Action out_reg(const std::string& r, bool move) {
		Action a;
		a.tag = move ? Action::OutputMove : Action::Output;
		a.regs = {r};
		a.fn = output_reg_atom(m.output_sort);
		return a;
	}

	Action simple(Action::Tag t) {
		Action a;
		a.tag = t;
		return a;
	}
};

}  // namespace dw
