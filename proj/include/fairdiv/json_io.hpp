#ifndef FAIRDIV_JSON_IO_HPP
#define FAIRDIV_JSON_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/allocation.hpp"
#include "fairdiv/hardness.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/predicates.hpp"
#include "fairdiv/protocols.hpp"

namespace fairdiv {

using Json = nlohmann::json;

// Malformed documents (wrong shape, bad rationals, non-normalised valuations).
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rationals travel as "p/q" strings; integers are also accepted on input.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"n": 2, "agents": [{"breakpoints": ["0","1"], "densities": ["1"]}, ...]}
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

// {"pieces": [[["0","1/3"]], [["1/3","1"]]]}
Json allocation_to_json(const Allocation& a);
Allocation allocation_from_json(const Json& j);

// [["1/2","1/2"], ...]
Json matrix_to_json(const ValueMatrix& m);
ValueMatrix matrix_from_json(const Json& j);

Json ledger_to_json(const QueryLedger& ledger);
Json report_to_json(const FairnessReport& report);
Json trace_to_json(const std::vector<TraceEvent>& trace);
Json growth_to_json(const GrowthReport& report);
Json implication_to_json(const ImplicationReport& report);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace fairdiv

#endif  // FAIRDIV_JSON_IO_HPP
