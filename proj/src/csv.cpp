#include "raopt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace raopt {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_summary_csv(const std::string& path,
                       const std::vector<ReplicationSummary>& summaries) {
  std::ofstream out = open_for_write(path);
  out << "B,mean_error,trimmed_error,sd_error,mean_jb,replications\n";
  for (const ReplicationSummary& s : summaries) {
    out << s.budget << ',' << format_double(s.mean_error) << ','
        << format_double(s.trimmed_error) << ',' << format_double(s.sd_error) << ','
        << format_double(s.mean_jb) << ',' << s.records.size() << '\n';
  }
  finish(out, path);
}

void write_replications_csv(const std::string& path,
                            const std::vector<ReplicationSummary>& summaries) {
  std::ofstream out = open_for_write(path);
  out << "B,rep,seed,error,j_used,consumed\n";
  for (const ReplicationSummary& s : summaries) {
    for (const ReplicationRecord& r : s.records) {
      out << r.budget << ',' << r.rep << ',' << r.seed << ',' << format_double(r.error)
          << ',' << r.j_used << ',' << r.consumed << '\n';
    }
  }
  finish(out, path);
}

void write_stage_csv(const std::string& path, const RaResult& result) {
  std::ofstream out = open_for_write(path);
  out << "stage,gamma,n,tau,iterations,value_evals,grad_evals,remaining,stop_reason\n";
  for (const StageRecord& rec : result.stage_records) {
    out << rec.schedule.j << ',' << format_double(rec.schedule.gamma) << ','
        << rec.schedule.n << ',' << format_double(rec.schedule.tau) << ','
        << rec.result.iterations << ',' << rec.result.value_evals << ','
        << rec.result.grad_evals << ',' << rec.result.remaining << ','
        << stop_reason_name(rec.result.stop_reason) << '\n';
  }
  finish(out, path);
}

}  // namespace raopt
