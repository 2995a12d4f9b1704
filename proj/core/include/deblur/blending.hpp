#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deblur/image.hpp"
#include "deblur/sharpness.hpp"

namespace deblur {

struct BlendConfig {
    double eta = 1e-4;        // minimum accepted per-round Q gain (scaled Q units)
    double epsilon_w = 1e-4;  // lowest weight treated as exhausted at or below this
    int max_rounds_cap = 1000;

    void validate() const;
};

/// Candidates sorted by ascending Q together with the current weight vector.
/// Weights follow an arithmetic progression: round m holds 1/N + m * step.
struct BlendState {
    std::shared_ptr<const std::vector<Image>> candidates;
    std::vector<double> q_values;
    std::vector<std::size_t> source_index;  // position of each candidate in the caller's list
    std::vector<double> weights;
    int round = 0;
    std::vector<double> q_history;                  // Q of the blend at each accepted round
    std::vector<std::vector<double>> weight_history;  // weights at each accepted round
    bool tie_broken = false;  // equal Q values were ordered by input position

    std::size_t size() const noexcept { return weights.size(); }
};

/// Sorts candidates by Q (stable, so ties keep input order) and assigns equal weights.
BlendState make_blend_state(std::vector<Image> candidates, std::vector<double> q_values);

/// Relative Q change from p to q: (q_q - q_p) / q_p. Throws if q_p is not positive.
double delta(double q_p, double q_q);

/// Net change of every weight over one full round.
std::vector<double> round_step(std::span<const double> q_values);

/// One pass over iterations i = 1 .. N-1: every lower weight gives up its delta
/// against the iteration's reference candidate, which receives the sum.
/// Returns nullopt if any weight would turn negative during the pass.
std::optional<BlendState> run_round(const BlendState& state);

/// Weighted pixel sum of the candidates, clamped to [0,1].
Image compose(const BlendState& state);

/// Rounds until the lowest weight reaches zero, floor(w0 / step0); `cap` if it never does.
int max_rounds(const BlendState& state, int cap);

enum class Termination {
    q_decrease,        // next round lowered Q; current round kept
    small_gain,        // gain below eta; the new round is kept
    weight_exhausted,  // lowest weight at or below epsilon_w
    round_bound,       // arithmetic-progression bound or cap reached
    negative_weight,   // next round would drive a weight negative
    zero_q,            // a candidate has Q = 0, so deltas are undefined
};

const char* to_string(Termination t) noexcept;

struct BlendResult {
    Image image;
    BlendState state;
    Termination termination = Termination::round_bound;
    int round_bound = 0;
    std::optional<double> rejected_q;  // Q of the round that triggered q_decrease
};

/// Requires at least two candidates of equal dimensions.
BlendResult blend(std::vector<Image> candidates, const BlendConfig& config = {}, const QConfig& qconfig = {});

}  // namespace deblur
