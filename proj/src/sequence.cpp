#include "sofic/sequence.hpp"

#include "sofic/errors.hpp"

namespace sofic {

SequenceReport check_sequence(const ApproximationSequence& seq, const std::vector<double>& schedule) {
  if (seq.stages.empty()) throw InvalidArgument("approximation sequence is empty");
  if (schedule.size() != seq.stages.size()) throw InvalidArgument("schedule length differs from the sequence");
  if (!(seq.separation_floor > 0.0)) throw InvalidArgument("separation floor must be positive");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0)) throw InvalidArgument("schedule entries must be positive");
    if (k > 0 && !(schedule[k] < schedule[k - 1])) throw InvalidArgument("schedule is not strictly decreasing");
  }
  const GroupBackend& group = seq.stages.front().map.domain().backend();
  for (std::size_t k = 1; k < seq.stages.size(); ++k) {
    const BallTable& d = seq.stages[k].map.domain();
    if (!(d.backend() == group)) throw InvalidArgument("sequence stages use different groups");
    if (d.radius() <= seq.stages[k - 1].map.domain().radius()) {
      throw InvalidArgument("ball radii are not strictly increasing");
    }
  }

  SequenceReport report;
  report.passed = true;
  for (std::size_t k = 0; k < seq.stages.size(); ++k) {
    const AlmostHom& j = seq.stages[k].map;
    SequenceRow row;
    row.radius = j.domain().radius();
    row.degree = j.degree();
    row.defect = defect(j);
    row.separation = separation(j);
    row.schedule = schedule[k];
    row.defect_ok = row.defect.value <= schedule[k];
    row.separation_ok = row.separation.value >= seq.separation_floor;
    if (!(row.defect_ok && row.separation_ok)) {
      report.passed = false;
      if (!report.first_failure) report.first_failure = k;
    }
    report.rows.push_back(row);
  }
  return report;
}

nlohmann::json SequenceReport::to_json() const {
  nlohmann::json rows_doc = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"radius", r.radius},          {"degree", r.degree},
                       {"defect", r.defect.value},     {"schedule", r.schedule},
                       {"separation", r.separation.value}, {"defectOk", r.defect_ok},
                       {"separationOk", r.separation_ok}};
    if (r.defect.exact) row["defectExact"] = sofic::to_string(*r.defect.exact);
    if (r.separation.exact) row["separationExact"] = sofic::to_string(*r.separation.exact);
    rows_doc.push_back(row);
  }
  nlohmann::json doc{{"passed", passed}, {"stages", rows_doc}};
  doc["firstFailure"] = first_failure ? nlohmann::json(*first_failure) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace sofic
