#include "deblur_tools/report.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>

#include "deblur/structure_tensor.hpp"

namespace deblur::tools {

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

namespace {

std::string fixed(double value, int digits) {
    if (!std::isfinite(value)) return format_number(value);
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
    return buffer;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_number(values[i]);
    }
    return out;
}

}  // namespace

void write_eval_csv(const std::vector<EvalRow>& rows, std::ostream& out) {
    out << kEvalCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.name << ',' << format_number(r.psnr) << ',' << format_number(r.ssim) << ',' << format_number(r.q_orig)
            << ',' << format_number(r.q_degr) << ',' << format_number(r.q_rest) << ',' << format_number(r.v) << ','
            << format_number(r.j) << ',' << (r.well_behaved ? 1 : 0) << '\n';
    }
}

EvalRow mean_row(const std::vector<EvalRow>& rows) {
    EvalRow mean;
    mean.name = "mean";
    if (rows.empty()) return mean;
    std::size_t finite_psnr = 0;
    std::size_t finite_v = 0;
    for (const auto& r : rows) {
        if (std::isfinite(r.psnr)) {
            mean.psnr += r.psnr;
            ++finite_psnr;
        }
        if (std::isfinite(r.v)) {
            mean.v += r.v;
            ++finite_v;
        }
        mean.ssim += r.ssim;
        mean.q_orig += r.q_orig;
        mean.q_degr += r.q_degr;
        mean.q_rest += r.q_rest;
        mean.j += r.j;
        mean.well_behaved = mean.well_behaved && r.well_behaved;
    }
    const auto n = static_cast<double>(rows.size());
    mean.psnr = finite_psnr ? mean.psnr / static_cast<double>(finite_psnr) : std::numeric_limits<double>::infinity();
    mean.v = finite_v ? mean.v / static_cast<double>(finite_v) : std::numeric_limits<double>::infinity();
    mean.ssim /= n;
    mean.q_orig /= n;
    mean.q_degr /= n;
    mean.q_rest /= n;
    mean.j /= n;
    return mean;
}

void write_eval_table(const std::vector<EvalRow>& rows, std::ostream& out) {
    std::size_t name_width = 4;
    for (const auto& r : rows) name_width = std::max(name_width, r.name.size());

    auto line = [&](const std::string& name, const std::vector<std::string>& cells) {
        out << std::left << std::setw(static_cast<int>(name_width)) << name;
        for (const auto& c : cells) out << "  " << std::right << std::setw(9) << c;
        out << '\n';
    };
    auto cells = [](const EvalRow& r) {
        return std::vector<std::string>{fixed(r.psnr, 3),   fixed(r.ssim, 4),   fixed(r.q_orig, 4),
                                        fixed(r.q_degr, 4), fixed(r.q_rest, 4), fixed(r.v, 4),
                                        fixed(r.j, 4),      r.well_behaved ? "yes" : "no"};
    };

    line("name", {"psnr", "ssim", "q_orig", "q_degr", "q_rest", "v", "j", "well"});
    for (const auto& r : rows) line(r.name, cells(r));
    if (!rows.empty()) line("mean", cells(mean_row(rows)));
}

void write_blend_report(const BlendResult& result, const std::vector<std::string>& candidate_names,
                        const std::string& manifest, std::ostream& out) {
    const auto& state = result.state;
    out << "manifest=" << manifest << '\n';
    out << "candidates=" << state.size() << '\n';
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::size_t source = state.source_index[i];
        out << "candidate." << i << ".name=" << (source < candidate_names.size() ? candidate_names[source] : "") << '\n';
        out << "candidate." << i << ".q=" << format_number(state.q_values[i]) << '\n';
    }
    out << "tie_broken=" << (state.tie_broken ? "true" : "false") << '\n';
    for (std::size_t r = 0; r < state.q_history.size(); ++r) {
        out << "round." << r << ".weights=" << join(state.weight_history[r]) << '\n';
        out << "round." << r << ".q=" << format_number(state.q_history[r]) << '\n';
    }
    out << "rounds=" << state.round << '\n';
    out << "round_bound=" << result.round_bound << '\n';
    if (result.rejected_q) out << "rejected_q=" << format_number(*result.rejected_q) << '\n';
    out << "termination=" << to_string(result.termination) << '\n';
    out << "final_weights=" << join(state.weights) << '\n';
    out << "final_q=" << format_number(state.q_history.empty() ? 0.0 : state.q_history.back()) << '\n';
}

void write_bucket_histogram(const std::vector<std::uint64_t>& counts, std::ostream& out) {
    std::uint64_t total = 0;
    std::uint64_t peak = 0;
    std::size_t populated = 0;
    for (const auto c : counts) {
        total += c;
        peak = std::max(peak, c);
        if (c) ++populated;
    }
    constexpr int kBarWidth = 40;
    out << "bucket (angle,strength,coherence)  count\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (!counts[i]) continue;
        const PatchKey key = PatchKey::from_index(static_cast<int>(i));
        const int bar = peak ? static_cast<int>(std::llround(kBarWidth * static_cast<double>(counts[i]) / static_cast<double>(peak))) : 0;
        out << std::setw(4) << i << " (" << std::setw(2) << key.angle_bin << ',' << key.strength_bin << ','
            << key.coherence_bin << ")  " << std::setw(12) << counts[i] << ' ' << std::string(static_cast<std::size_t>(std::max(bar, 1)), '#')
            << '\n';
    }
    out << "populated=" << populated << '/' << counts.size() << " total=" << total << '\n';
}

}  // namespace deblur::tools
