#pragma once

#include "inscribe/continuation.hpp"
#include "inscribe/ftc.hpp"
#include "inscribe/simplex.hpp"
#include "inscribe/slq.hpp"

#include <json.hpp>

#include <ostream>

namespace inscribe::records {

using Json = nlohmann::ordered_json;

Json to_json(const slq::Solution& s);
Json to_json(const slq::Orbit& o);
Json to_json(const simplex::InscribedSimplex& s);
Json to_json(const simplex::SweepSummary& s);
Json to_json(const continuation::Path& p);
Json to_json(const continuation::ParityReport& r);
Json to_json(const ftc::SidelengthAudit& a);
Json to_json(const ftc::ExtractionResult& r);

/// One self-describing JSON object per line.
class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) {}
    void write(const Json& j) { out_ << j.dump() << '\n'; }

  private:
    std::ostream& out_;
};

}  // namespace inscribe::records
