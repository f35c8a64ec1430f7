#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqse/outcome_source.hpp"
#include "aqse/qubit_model.hpp"

namespace aqse {

/// One measurement event: which trial, which photon, the POVM setting the
/// controller chose, and which detector clicked.
struct TraceRecord {
    int trial = 0;
    int step = 0;
    double setting_rad = 0.0;
    int outcome = 0;
};

/// A recorded trace no longer matches what the estimator computes. Carries
/// the offending (trial, step) so drift can be located exactly.
class ReplayError : public std::runtime_error {
  public:
    ReplayError(const std::string& message, int trial, int step)
        : std::runtime_error(message), trial_(trial), step_(step) {}

    int trial() const { return trial_; }
    int step() const { return step_; }

  private:
    int trial_;
    int step_;
};

/// Appends measurement records as CSV with header
/// `trial,step,setting_rad,outcome`, LF line endings, settings with 10
/// significant digits. Steps must arrive dense from 0 within a trial and a
/// trial id may not reappear once another trial has started.
class TraceWriter {
  public:
    explicit TraceWriter(const std::filesystem::path& path);

    void append(const TraceRecord& record);
    void flush();

  private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::vector<bool> seen_;  // trial ids already completed
    int current_trial_ = -1;
    int next_step_ = 0;
};

/// Formats one record the way TraceWriter writes it.
std::string format_trace_line(const TraceRecord& record);

/// Records of one trial, steps dense from 0.
struct TrialTrace {
    int trial_id = 0;
    std::vector<TraceRecord> records;
};

/// Parses a trace CSV. Trials are returned ordered by trial id regardless
/// of their order in the file; malformed input raises std::runtime_error
/// naming the line.
std::vector<TrialTrace> read_trace(const std::filesystem::path& path);

/// Feeds one trial's recorded outcomes back into the adaptive loop. Each
/// draw first checks that the setting the estimator asks for matches the
/// recorded one within 1e-9 (wrapped); a mismatch means the estimator that
/// produced the trace and the one replaying it disagree, and raises
/// ReplayError at the first differing step. Running past the end of the
/// trace also raises ReplayError.
class ReplaySource final : public OutcomeSource {
  public:
    explicit ReplaySource(const TrialTrace& trace) : trace_(&trace) {}

    int draw(AngleRad theta_true, AngleRad setting) override;

    int position() const { return cursor_; }

    static constexpr double kSettingTolerance = 1e-9;

  private:
    const TrialTrace* trace_;
    int cursor_ = 0;
};

}  // namespace aqse
