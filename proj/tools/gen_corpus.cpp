// Regenerates the bundled corpus of example machines, pipelines,
// expressions and SSTs.  Usage: gen_corpus <directory>

#include <fstream>
#include <iostream>

#include "dw/fixtures.hpp"
#include "dw/reglist.hpp"
#include "dw/sst.hpp"

using namespace dw;
using nlohmann::json;

static void put(const std::string& dir, const std::string& name,
                const json& j) {
	std::ofstream out(dir + "/" + name);
	if (!out) {
		std::cerr << "cannot write " << dir << "/" << name << "\n";
		std::exit(1);
	}
	out << j.dump(2) << "\n";
}

int main(int argc, char** argv) {
	if (argc != 2) {
		std::cerr << "usage: gen_corpus <directory>\n";
		return 2;
	}
	std::string dir = argv[1];
	SortP a = atom_sort();

	put(dir, "atomprop.json", machine_to_json(atom_propagation_mealy()));
	put(dir, "mapreverse.2way.json", machine_to_json(map_reverse_2way()));
	put(dir, "first_last.json", machine_to_json(first_last_automaton()));
	put(dir, "first_letter_multiuse.json",
	    machine_to_json(first_letter_multiuse()));
	put(dir, "three_letters.json", machine_to_json(three_letters_automaton()));

	put(dir, "flipflop.prime.json", prime_to_json(prime_flipflop()));
	put(dir, "group_z2.prime.json", prime_to_json(prime_group(Group::cyclic(2))));
	put(dir, "group_z3.prime.json", prime_to_json(prime_group(Group::cyclic(3))));
	put(dir, "atomprop.prime.json", prime_to_json(prime_atom_propagation()));
	put(dir, "mapreverse.prime.json",
	    pipeline_to_json(pipe_prime(prime_map_reverse(a))));
	put(dir, "mapduplicate.prime.json",
	    pipeline_to_json(pipe_prime(prime_map_duplicate(a))));

	put(dir, "mapreverse.rlf.json",
	    rlf_to_json(rlf_map_reverse(a, unit_sort("sep"))));
	put(dir, "mapduplicate.rlf.json",
	    rlf_to_json(rlf_map_duplicate(a, unit_sort("sep"))));
	put(dir, "three_distinct.rlf.json", rlf_to_json(three_distinct_letters_rlf()));

	put(dir, "mapreverse.sst.json", sst_to_json(map_reverse_sst()));
	put(dir, "mapduplicate.sst.json", sst_to_json(map_duplicate_sst()));
	put(dir, "copyful_doubler.sst.json", sst_to_json(copyful_doubler()));

	// a deliberately broken Mealy machine: one branch moves left
	TwoWaySUT bad = atom_propagation_mealy();
	bad.delta.begin()->second.no.action.tag = Action::MoveLeft;
	put(dir, "bad_mealy.json", machine_to_json(bad));

	return 0;
}
