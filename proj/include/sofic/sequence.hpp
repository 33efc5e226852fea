#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "json.hpp"

#include "sofic/certificate.hpp"

namespace sofic {

// Certificates over one group with strictly increasing ball radii, meant to
// have defects tending to 0 and separations bounded below by the floor.
struct ApproximationSequence {
  std::vector<Certificate> stages;
  double separation_floor = 0.0;
};

struct SequenceRow {
  int radius = 0;
  std::size_t degree = 0;
  Measurement defect;
  Measurement separation;
  double schedule = 0.0;
  bool defect_ok = false;
  bool separation_ok = false;
};

struct SequenceReport {
  bool passed = false;
  std::vector<SequenceRow> rows;
  std::optional<std::size_t> first_failure;
  nlohmann::json to_json() const;
};

// Passes iff defect(k) <= schedule[k] and separation(k) >= floor for every
// stage. Throws InvalidArgument for an empty sequence, a schedule of the wrong
// length or not strictly decreasing and positive, radii not strictly
// increasing, or stages over different groups.
SequenceReport check_sequence(const ApproximationSequence& seq, const std::vector<double>& schedule);

}  // namespace sofic
