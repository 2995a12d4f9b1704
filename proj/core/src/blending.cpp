#include "deblur/blending.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "deblur/parallel.hpp"

namespace deblur {

void BlendConfig::validate() const {
    if (!(eta >= 0.0)) throw std::invalid_argument("blend eta must be non-negative");
    if (!(epsilon_w > 0.0)) throw std::invalid_argument("blend epsilon_w must be positive");
    if (max_rounds_cap < 0) throw std::invalid_argument("blend round cap must be non-negative");
}

BlendState make_blend_state(std::vector<Image> candidates, std::vector<double> q_values) {
    if (candidates.empty()) throw std::invalid_argument("blending needs at least one candidate");
    if (candidates.size() != q_values.size()) throw std::invalid_argument("one Q value per candidate required");
    for (const auto& c : candidates)
        if (c.width() != candidates.front().width() || c.height() != candidates.front().height())
            throw std::invalid_argument("blend candidates must share dimensions");

    const std::size_t n = candidates.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q_values[a] < q_values[b]; });

    BlendState state;
    auto sorted = std::make_shared<std::vector<Image>>();
    sorted->reserve(n);
    for (const std::size_t i : order) {
        sorted->push_back(std::move(candidates[i]));
        state.q_values.push_back(q_values[i]);
    }
    state.candidates = std::move(sorted);
    state.source_index = std::move(order);
    state.weights.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 1; i < n; ++i)
        if (state.q_values[i] == state.q_values[i - 1]) state.tie_broken = true;
    return state;
}

double delta(double q_p, double q_q) {
    if (!(q_p > 0.0)) throw std::invalid_argument("delta requires a positive reference Q");
    return (q_q - q_p) / q_p;
}

namespace {

// Applies one pass of the iteration schedule to `w`; false if a weight would go negative.
bool apply_pass(std::span<const double> q, std::vector<double>& w) {
    const std::size_t n = q.size();
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t reference = n - i;
        double moved = 0.0;
        for (std::size_t k = 0; k < reference; ++k) {
            const double d = delta(q[k], q[reference]);
            w[k] -= d;
            if (w[k] < 0.0) return false;
            moved += d;
        }
        w[reference] += moved;
    }
    return true;
}

}  // namespace

std::vector<double> round_step(std::span<const double> q_values) {
    std::vector<double> step(q_values.size(), 0.0);
    const std::size_t n = q_values.size();
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t reference = n - i;
        for (std::size_t k = 0; k < reference; ++k) {
            const double d = delta(q_values[k], q_values[reference]);
            step[k] -= d;
            step[reference] += d;
        }
    }
    return step;
}

std::optional<BlendState> run_round(const BlendState& state) {
    const std::size_t n = state.size();
    if (n <= 1) {
        BlendState next = state;
        ++next.round;
        return next;
    }

    std::vector<double> trial = state.weights;
    if (!apply_pass(state.q_values, trial)) return std::nullopt;

    // Weights are evaluated in closed form so the trajectory is an exact
    // arithmetic progression rather than an accumulation of rounding.
    const std::vector<double> step = round_step(state.q_values);
    BlendState next = state;
    ++next.round;
    const double initial = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) next.weights[i] = initial + next.round * step[i];
    if (std::any_of(next.weights.begin(), next.weights.end(), [](double w) { return w < 0.0; })) return std::nullopt;
    return next;
}

Image compose(const BlendState& state) {
    const auto& candidates = *state.candidates;
    if (candidates.empty()) throw std::invalid_argument("nothing to compose");
    const int w = candidates.front().width();
    const int h = candidates.front().height();
    for (const auto& c : candidates)
        if (c.width() != w || c.height() != h) throw std::invalid_argument("blend candidates must share dimensions");

    Image out(w, h);
    parallel_for(0, h, [&](int y) {
        auto dst = out.row(y);
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const double weight = state.weights[i];
            const auto src = candidates[i].row(y);
            for (int x = 0; x < w; ++x) dst[x] += weight * src[x];
        }
        for (double& v : dst) v = std::clamp(v, 0.0, 1.0);
    });
    return out;
}

int max_rounds(const BlendState& state, int cap) {
    if (state.size() <= 1) return cap;
    const double decrement = -round_step(state.q_values).front();
    if (!(decrement > 0.0)) return cap;
    const double initial = 1.0 / static_cast<double>(state.size());
    // Nudge before flooring so exact ratios such as 0.25 / 0.05 are not lost to rounding.
    const double rounds = std::floor(initial / decrement * (1.0 + 1e-12));
    return rounds >= cap ? cap : static_cast<int>(rounds);
}

const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::q_decrease: return "q_decrease";
        case Termination::small_gain: return "small_gain";
        case Termination::weight_exhausted: return "weight_exhausted";
        case Termination::round_bound: return "round_bound";
        case Termination::negative_weight: return "negative_weight";
        case Termination::zero_q: return "zero_q";
    }
    return "unknown";
}

BlendResult blend(std::vector<Image> candidates, const BlendConfig& config, const QConfig& qconfig) {
    config.validate();
    if (candidates.size() < 2) throw std::invalid_argument("blending needs at least two candidates");

    std::vector<double> q;
    q.reserve(candidates.size());
    for (const auto& c : candidates) q.push_back(metric_q(c, qconfig));

    BlendResult result;
    BlendState state = make_blend_state(std::move(candidates), std::move(q));
    Image current = compose(state);
    double current_q = metric_q(current, qconfig);
    state.q_history.push_back(current_q);
    state.weight_history.push_back(state.weights);

    if (!(state.q_values.front() > 0.0)) {
        result.termination = Termination::zero_q;
        result.image = std::move(current);
        result.state = std::move(state);
        return result;
    }

    result.round_bound = max_rounds(state, config.max_rounds_cap);
    while (true) {
        if (state.round >= result.round_bound) {
            result.termination = Termination::round_bound;
            break;
        }
        auto next = run_round(state);
        if (!next) {
            result.termination = Termination::negative_weight;
            break;
        }
        Image candidate = compose(*next);
        const double next_q = metric_q(candidate, qconfig);
        if (next_q < current_q) {
            result.termination = Termination::q_decrease;
            result.rejected_q = next_q;
            break;
        }
        const double gain = next_q - current_q;
        state = std::move(*next);
        current = std::move(candidate);
        current_q = next_q;
        state.q_history.push_back(current_q);
        state.weight_history.push_back(state.weights);
        if (gain < config.eta) {
            result.termination = Termination::small_gain;
            break;
        }
        if (state.weights.front() <= config.epsilon_w) {
            result.termination = Termination::weight_exhausted;
            break;
        }
    }

    result.image = std::move(current);
    result.state = std::move(state);
    return result;
}

}  // namespace deblur
