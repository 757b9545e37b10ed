#pragma once

// JSON forms of every report. Object keys are sorted (nlohmann::json uses an
// ordered map), so output is byte-stable for fixed inputs.

#include <nlohmann/json.hpp>

#include <string>

#include "coarsegrp/audit.hpp"
#include "coarsegrp/bigrank.hpp"
#include "coarsegrp/cgcat.hpp"
#include "coarsegrp/fgab.hpp"
#include "coarsegrp/geom.hpp"
#include "coarsegrp/morph.hpp"
#include "coarsegrp/quasihom.hpp"

namespace cg::serialize {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const intlat::Integer& v);
json to_json(const intlat::ExtNat& v);
json to_json(const intlat::IntVector& v);
json to_json(const std::vector<intlat::IntVector>& v);

json to_json(const fgab::Invariants& inv);
json to_json(const morph::MorphismReport& r);
json to_json(const morph::ClassifyResult& r);
json to_json(const morph::DichotomyCheck& r);
json to_json(const quasihom::DefectReport& r);
json to_json(const quasihom::PerturbReport& r);
json to_json(const quasihom::ComposeReport& r);
json to_json(const quasihom::SectionReport& r);
json to_json(const quasihom::InverseReport& r);
json to_json(const cgcat::RationalMap& m);
json to_json(const cgcat::Span& s);
json to_json(const cgcat::EquivalenceReport& r);
json to_json(const cgcat::OreSquare& sq);
json to_json(const cgcat::HomotopicalReport& r);
json to_json(const bigrank::StructuredReport& r);
json to_json(const geom::CoverWitness& w, const geom::CoverCheck& check);
json to_json(const geom::PeriodicSet& a);
json to_json(const geom::DltVsSmall& r);
json to_json(const audit::AuditReport& r);

/// {"schema_version": .., "command": .., "result": ..}
json envelope(const std::string& command, json result);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);
/// One "path = value" line per leaf.
std::string dump_text(const json& j);

}  // namespace cg::serialize
