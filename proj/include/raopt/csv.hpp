#pragma once

#include <string>
#include <vector>

#include "raopt/experiments.hpp"
#include "raopt/retrospective.hpp"

namespace raopt {

/// 17 significant digits, enough for a lossless double round-trip.
std::string format_double(double value);

/// Columns: B,mean_error,trimmed_error,sd_error,mean_jb,replications
void write_summary_csv(const std::string& path,
                       const std::vector<ReplicationSummary>& summaries);

/// Columns: B,rep,seed,error,j_used,consumed
void write_replications_csv(const std::string& path,
                            const std::vector<ReplicationSummary>& summaries);

/// Per-stage trace of one staged run.
/// Columns: stage,gamma,n,tau,iterations,value_evals,grad_evals,remaining,stop_reason
void write_stage_csv(const std::string& path, const RaResult& result);

}  // namespace raopt
