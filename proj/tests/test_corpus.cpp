#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dw/reglist.hpp"
#include "dw/sst.hpp"

using namespace dw;
using nlohmann::json;

static json load(const std::filesystem::path& p) {
	std::ifstream in(p);
	REQUIRE(in.good());
	json j;
	in >> j;
	return j;
}

TEST_CASE("every corpus file loads, validates, and re-serializes equal") {
	int seen = 0;
	for (auto& entry : std::filesystem::directory_iterator(DW_CORPUS_DIR)) {
		if (entry.path().extension() != ".json") continue;
		seen++;
		INFO(entry.path().string());
		json j = load(entry.path());
		std::string stem = entry.path().filename().string();
		if (j.contains("kind") && j.at("kind") == "sst") {
			SSTMachine m = sst_from_json(j);
			CHECK(validate_sst(m).empty());
			CHECK(sst_to_json(m) == j);
		} else if (j.contains("kind")) {
			TwoWaySUT m = machine_from_json(j);
			if (stem == "bad_mealy.json")
				CHECK(!validate(m).empty());
			else
				CHECK(validate(m).empty());
			CHECK(machine_to_json(m) == j);
		} else if (j.contains("prime") || j.contains("seq") ||
		           j.contains("par")) {
			Pipeline p = pipeline_from_json(j);
			CHECK(p.dom() != nullptr);
			CHECK(pipeline_to_json(p) == j);
		} else if (j.contains("tag") &&
		           (j.at("tag") == "flipflop" || j.at("tag") == "mapreverse" ||
		            j.at("tag") == "mapduplicate" ||
		            j.at("tag") == "grouptransducer" ||
		            j.at("tag") == "atompropagation" ||
		            j.at("tag") == "lphom" || j.at("tag") == "hom" ||
		            j.at("tag") == "classicalmealy" ||
		            j.at("tag") == "appendendmark" ||
		            j.at("tag") == "parwithid")) {
			PrimeFn p = prime_from_json(j);
			CHECK(prime_to_json(p) == j);
		} else {
			RlfP e = rlf_from_json(j);
			CHECK_NOTHROW(typecheck(e));
			CHECK(rlf_to_json(e) == j);
		}
	}
	CHECK(seen >= 18);
}
