#include "dw/build.hpp"

namespace dw {

PatternFn letter_pred(const SortP& ext, const std::vector<std::string>& yes) {
	SortP cod = sum_sort(unit_sort("yes"), unit_sort("no"));
	std::vector<PatternCase> cs;
	for (auto& g : yes)
		cs.push_back({parse_for_sort(g, ext), vin(0, vu("yes"))});
	return PatternFn::make(ext, cod, std::move(cs), vin(1, vu("no")));
}

PatternFn store_letter_atom(const SortP& ext) {
	SortP cod = sum_sort(atom_sort(), unit_sort("bot"));
	std::vector<PatternCase> cs;
	for (const Value& rep : orbit_reps(ext))
		if (!least_support(rep).empty()) cs.push_back({rep, vin(0, va(0))});
	return PatternFn::make(ext, cod, std::move(cs), vin(1, vu("bot")));
}

PatternFn output_const(const SortP& out, const std::string& lit) {
	return const_fn(unit_sort("nil"), out, parse_for_sort(lit, out));
}

PatternFn output_reg_atom(const SortP& out) {
	auto emb = coerce(va(0), out);
	if (!emb)
		throw Error("SortMismatch",
		            "output sort " + show_sort(out) + " has no atom slot");
	return PatternFn::make(atom_sort(), out, {{va(0), *emb}});
}

}  // namespace dw
