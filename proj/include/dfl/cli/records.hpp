#pragma once

#include "dfl/abc.hpp"
#include "dfl/block.hpp"
#include "dfl/bounds.hpp"
#include "dfl/cli/output.hpp"
#include "dfl/equation.hpp"

namespace dfl::cli {

OutputRecord solution_record(const SolutionRecord& s);
OutputRecord bound_check_record(const BoundCheckResult& r);
OutputRecord triple_record(const AbcTriple& t);
OutputRecord proof_triple_record(const ProofTriple& p);
OutputRecord summary_record(std::string name, Json fields);

Json to_json(const AbcTriple& t);
Json to_json(const ProofTriple& p);
Json to_json(const BlockReport& b);

}  // namespace dfl::cli
