#include "popmcmc/trace.hpp"

#include <cstdio>
#include <stdexcept>

namespace popmcmc::harness {

TraceWriter::TraceWriter(const std::string& path, long stride)
    : out_(path), stride_(stride) {
  if (!out_) throw std::runtime_error("TraceWriter: cannot open " + path);
  if (stride_ < 1) throw std::invalid_argument("TraceWriter: stride must be >= 1");
  out_ << "sweep,chain,k,log_target,move_kind,proposed,accepted\n";
}

void TraceWriter::write(const TraceRecord& r) {
  if (r.sweep % stride_ != 0) return;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", r.log_target);
  out_ << r.sweep << ',' << r.chain << ',' << r.k << ',' << buf << ','
       << move_kind_name(r.kind) << ',' << (r.proposed ? 1 : 0) << ','
       << (r.accepted ? 1 : 0) << '\n';
  ++rows_;
}

}  // namespace popmcmc::harness
