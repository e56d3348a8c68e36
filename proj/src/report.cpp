#include "evosocial/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace evosocial {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

void type_columns(std::ostream& os, std::size_t types) {
    for (std::size_t i = 1; i <= types; ++i) os << ",x_type_" << i;
}

void values(std::ostream& os, const std::vector<double>& xs) {
    for (double x : xs) os << ',' << format_number(x);
}

} // namespace

std::string format_ess_set(const std::vector<int>& ess_set) {
    std::string out = "{";
    for (std::size_t i = 0; i < ess_set.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(ess_set[i]);
    }
    return out + "}";
}

void write_meanfield_csv(std::ostream& os, const Trajectory& trajectory) {
    const std::size_t types = trajectory.empty() ? 0 : trajectory.front().state.x_per_type.size();
    os << "t,x_total";
    type_columns(os, types);
    os << '\n';
    for (const TrajectorySample& s : trajectory) {
        os << format_number(s.t) << ',' << format_number(s.state.x_total);
        values(os, s.state.x_per_type);
        os << '\n';
    }
}

void write_simulation_csv(std::ostream& os, const EnsembleResult& ensemble) {
    const std::size_t types = ensemble.results.empty() ? 0 : ensemble.results.front().final_x_per_type.size();
    os << "trial,step,x_total";
    type_columns(os, types);
    os << '\n';
    for (std::size_t t = 0; t < ensemble.results.size(); ++t) {
        const TrialResult& r = ensemble.results[t];
        if (r.samples.empty()) {
            os << t << ',' << r.steps_run << ',' << format_number(r.final_x);
            values(os, r.final_x_per_type);
            os << '\n';
            continue;
        }
        for (const TrajectoryPoint& p : r.samples) {
            os << t << ',' << p.step << ',' << format_number(p.x_total);
            values(os, p.x_per_type);
            os << '\n';
        }
    }
}

void write_ensemble_summary_header(std::ostream& os) {
    os << "beliefs,proportions,n_agents,k,alpha,u,lambda,trials,absorbed,mean_final_x\n";
}

void write_ensemble_summary_row(std::ostream& os, const TypeProfile& profile, const GameParams& params,
                                const EnsembleResult& ensemble) {
    auto joined = [](const std::vector<double>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_number(xs[i]);
        return s;
    };
    int absorbed = 0;
    for (const TrialResult& r : ensemble.results) absorbed += r.absorbed ? 1 : 0;
    os << joined(profile.beliefs) << ',' << joined(profile.proportions) << ',' << params.n_agents << ','
       << params.k << ',' << format_number(params.alpha) << ',' << format_number(params.u) << ','
       << format_number(lambda_discriminant(profile)) << ',' << ensemble.trials << ',' << absorbed << ','
       << format_number(ensemble.mean_final_x) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw ValidationError("no sweep rows to report");
    os << "swept_value,lambda,centralized_decision,predicted_limit,ess_set,meanfield_x,simulated_mean_x,trials\n";
    for (const SweepRow& r : rows) {
        os << format_number(r.swept_value) << ',' << format_number(r.lambda) << ',' << to_string(r.centralized)
           << ',' << to_string(r.predicted) << ',' << format_ess_set(r.ess_set) << ','
           << format_number(r.meanfield_x) << ',' << format_number(r.simulated_mean_x) << ',' << r.trials << '\n';
    }
}

void write_sweep_summary(std::ostream& os, const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw ValidationError("no sweep rows to report");
    os << "value      lambda     detector  predicted  simulated\n";
    for (const SweepRow& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%-10.4f %-+10.4f %-9s %-10s %.4f%s\n", r.swept_value, r.lambda,
                      to_string(r.centralized), to_string(r.predicted), r.simulated_mean_x,
                      std::abs(r.lambda) <= kNearThresholdBand ? "  (near threshold)" : "");
        os << line;
    }
    const AgreementSummary a = agreement(rows);
    char line[128];
    std::snprintf(line, sizeof line, "agreement with centralized detector (|lambda| > %.2f): %d/%d = %.3f\n",
                  kNearThresholdBand, a.agreeing, a.considered, a.rate());
    os << line;
}

void emit_report(const std::vector<SweepRow>& rows, const std::string& csv_path, std::ostream& summary) {
    if (rows.empty()) throw ValidationError("no sweep rows to report");
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
        write_sweep_csv(out, rows);
        if (!out) throw std::runtime_error("failed writing '" + csv_path + "'");
    }
    write_sweep_summary(summary, rows);
}

} // namespace evosocial
