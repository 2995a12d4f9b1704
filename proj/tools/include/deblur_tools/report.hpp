#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "deblur/blending.hpp"

namespace deblur::tools {

struct EvalRow {
    std::string name;
    double psnr = 0.0;
    double ssim = 0.0;
    double q_orig = 0.0;
    double q_degr = 0.0;
    double q_rest = 0.0;
    double v = 0.0;
    double j = 0.0;
    bool well_behaved = true;
};

/// Column contract of the eval CSV; new columns may only be appended.
inline constexpr const char* kEvalCsvHeader = "name,psnr,ssim,q_orig,q_degr,q_rest,v,j,well_behaved";

/// One row per image; infinite PSNR or V are written as "inf".
void write_eval_csv(const std::vector<EvalRow>& rows, std::ostream& out);

/// Aligned plain-text table with a trailing mean row.
void write_eval_table(const std::vector<EvalRow>& rows, std::ostream& out);

/// Means over rows; infinite entries are excluded from the PSNR and V means.
EvalRow mean_row(const std::vector<EvalRow>& rows);

/// Line-oriented key=value blend report.
void write_blend_report(const BlendResult& result, const std::vector<std::string>& candidate_names,
                        const std::string& manifest, std::ostream& out);

/// Per-bucket training population, one line per populated bucket plus totals.
void write_bucket_histogram(const std::vector<std::uint64_t>& counts, std::ostream& out);

std::string format_number(double value);

}  // namespace deblur::tools
