#include "aqse/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace aqse {

namespace {

constexpr const char* kHeader = "trial,step,setting_rad,outcome";

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line_no,
                             const std::string& what) {
    throw std::runtime_error("trace parse error: " + path.string() + ":" +
                             std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string format_trace_line(const TraceRecord& record) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%d,%.10g,%d", record.trial, record.step,
                  record.setting_rad, record.outcome);
    return buf;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) {
        throw std::runtime_error("TraceWriter: cannot open " + path.string() +
                                 " for writing");
    }
    out_ << kHeader << '\n';
}

void TraceWriter::append(const TraceRecord& record) {
    if (record.outcome != 1 && record.outcome != 2) {
        throw std::invalid_argument("TraceWriter: outcome must be 1 or 2");
    }
    if (record.trial < 0 || record.step < 0) {
        throw std::invalid_argument("TraceWriter: negative trial or step");
    }
    if (record.trial != current_trial_) {
        if (record.trial < static_cast<int>(seen_.size()) && seen_[record.trial]) {
            throw std::invalid_argument("TraceWriter: duplicate trial " +
                                        std::to_string(record.trial));
        }
        if (record.step != 0) {
            throw std::invalid_argument("TraceWriter: trial " + std::to_string(record.trial) +
                                        " must start at step 0, got " +
                                        std::to_string(record.step));
        }
        if (current_trial_ >= 0) {
            if (current_trial_ >= static_cast<int>(seen_.size())) {
                seen_.resize(current_trial_ + 1, false);
            }
            seen_[current_trial_] = true;
        }
        current_trial_ = record.trial;
        next_step_ = 0;
    } else if (record.step != next_step_) {
        throw std::invalid_argument("TraceWriter: trial " + std::to_string(record.trial) +
                                    " step " + std::to_string(record.step) +
                                    " out of order (expected " + std::to_string(next_step_) +
                                    ")");
    }
    ++next_step_;
    out_ << format_trace_line(record) << '\n';
    if (!out_) {
        throw std::runtime_error("TraceWriter: write failed on " + path_.string());
    }
}

void TraceWriter::flush() {
    out_.flush();
    if (!out_) {
        throw std::runtime_error("TraceWriter: flush failed on " + path_.string());
    }
}

std::vector<TrialTrace> read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_trace: cannot open " + path.string());
    }
    std::string line;
    int line_no = 1;
    if (!std::getline(in, line) || line != kHeader) {
        parse_fail(path, 1, "expected header '" + std::string(kHeader) + "'");
    }

    std::map<int, std::vector<TraceRecord>> by_trial;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) parse_fail(path, line_no, "empty line");
        TraceRecord rec;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        auto field = [&](auto& out_value, const char* name) {
            auto [ptr, ec] = std::from_chars(p, end, out_value);
            if (ec != std::errc{}) {
                parse_fail(path, line_no, std::string("bad ") + name);
            }
            p = ptr;
        };
        auto comma = [&] {
            if (p >= end || *p != ',') parse_fail(path, line_no, "expected ','");
            ++p;
        };
        field(rec.trial, "trial");
        comma();
        field(rec.step, "step");
        comma();
        field(rec.setting_rad, "setting_rad");
        comma();
        field(rec.outcome, "outcome");
        if (p != end) parse_fail(path, line_no, "trailing characters");
        if (rec.outcome != 1 && rec.outcome != 2) {
            parse_fail(path, line_no, "outcome must be 1 or 2");
        }
        if (rec.trial < 0) parse_fail(path, line_no, "negative trial id");
        auto& records = by_trial[rec.trial];
        if (rec.step != static_cast<int>(records.size())) {
            parse_fail(path, line_no,
                       "trial " + std::to_string(rec.trial) + " step " +
                           std::to_string(rec.step) + " breaks dense step ordering");
        }
        records.push_back(rec);
    }

    std::vector<TrialTrace> trials;
    trials.reserve(by_trial.size());
    for (auto& [id, records] : by_trial) {
        trials.push_back({id, std::move(records)});
    }
    return trials;
}

int ReplaySource::draw(AngleRad /*theta_true*/, AngleRad setting) {
    if (cursor_ >= static_cast<int>(trace_->records.size())) {
        throw ReplayError("replay: trace for trial " + std::to_string(trace_->trial_id) +
                              " exhausted at step " + std::to_string(cursor_),
                          trace_->trial_id, cursor_);
    }
    const TraceRecord& rec = trace_->records[static_cast<std::size_t>(cursor_)];
    const double mismatch =
        std::fabs(wrapped_deviation(AngleRad(rec.setting_rad), setting));
    if (mismatch > kSettingTolerance) {
        throw ReplayError("replay divergence: trial " + std::to_string(rec.trial) + " step " +
                              std::to_string(rec.step) + ": recorded setting " +
                              std::to_string(rec.setting_rad) + " rad, estimator asks " +
                              std::to_string(setting.value()) + " rad",
                          rec.trial, rec.step);
    }
    ++cursor_;
    return rec.outcome;
}

}  // namespace aqse
