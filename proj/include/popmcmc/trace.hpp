#ifndef POPMCMC_TRACE_HPP
#define POPMCMC_TRACE_HPP

#include <fstream>
#include <string>

#include "popmcmc/move_stats.hpp"

namespace popmcmc::harness {

// One trace record per chain per recorded sweep. move_kind names the
// trans-dimensional or population move proposed for that chain in that sweep
// ("none" when the chain only saw fixed-dimension updates or none at all).
struct TraceRecord {
  long sweep = 0;
  int chain = 0;
  int k = 0;
  double log_target = 0.0;
  MoveKind kind = MoveKind::None;
  bool proposed = false;
  bool accepted = false;
};

class TraceWriter {
 public:
  TraceWriter(const std::string& path, long stride = 1);
  // writes the record when record.sweep is on the stride grid
  void write(const TraceRecord& r);
  long rows_written() const { return rows_; }

 private:
  std::ofstream out_;
  long stride_;
  long rows_ = 0;
};

}  // namespace popmcmc::harness

#endif
