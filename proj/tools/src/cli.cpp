#include "deblur_tools/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <memory>

#include "deblur_tools/commands.hpp"
#include "deblur_tools/json_config.hpp"
#include "deblur_tools/manifest.hpp"

namespace deblur::tools {

namespace {

void add_q_options(CLI::App* cmd, QConfig& q) {
    cmd->add_option("--q-patch", q.patch_size, "Tile side for the sharpness metric")->capture_default_str();
    cmd->add_option("--q-tau", q.tau, "Coherence threshold for anisotropic tiles")->capture_default_str();
    cmd->add_option("--q-scale", q.scale, "Scale factor applied to Q")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-blind deblurring with learned patch filters"};
    app.name("deblur");
    app.set_version_flag("--version", RunManifest::version());
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with option defaults, keyed by subcommand");
    app.require_subcommand(1);

    DegradeOptions degrade;
    auto* d = app.add_subcommand("degrade", "Blur (and optionally add noise to) images");
    d->add_option("input", degrade.input, "Image file or flat directory of images")->required();
    d->add_option("-o,--output", degrade.output_dir, "Output directory")->required();
    d->add_option("-k,--kernel", degrade.kernel, "gaussian:K:SIGMA, box:K or identity")->capture_default_str();
    d->add_option("--noise", degrade.noise_sigma, "Gaussian noise sigma on the [0,1] scale")->capture_default_str();
    d->add_option("--seed", degrade.seed, "Noise seed")->capture_default_str();

    TrainOptions train;
    auto* t = app.add_subcommand("train", "Learn a filter bank from sharp images");
    t->add_option("corpus", train.corpus, "Flat directory of sharp training images")->required();
    t->add_option("-o,--output", train.output, "Filter bank file to write")->required();
    t->add_option("-k,--kernel", train.kernel, "Blur the bank is trained to invert")->capture_default_str();
    t->add_option("-p,--patch-size", train.patch_size, "Odd filter side length")->capture_default_str();
    t->add_option("--stride", train.stride, "Training patch stride (default: 1 up to 100 images, else 2)");
    t->add_option("--strength-thresholds", train.strength_thresholds, "Two strength bucket edges")
        ->expected(2)
        ->capture_default_str();
    t->add_option("--coherence-thresholds", train.coherence_thresholds, "Two coherence bucket edges")
        ->expected(2)
        ->capture_default_str();
    t->add_option("--pinv-tol", train.pinv_tolerance, "Relative eigenvalue cutoff of the pseudoinverse")
        ->capture_default_str();
    t->add_flag("--no-augment", train.no_augment, "Disable symmetry augmentation");

    RestoreOptions restore;
    auto* r = app.add_subcommand("restore", "Apply one or more filter banks to blurred images");
    r->add_option("input", restore.input, "Image file or flat directory of images")->required();
    r->add_option("-b,--bank", restore.banks, "Filter bank file (repeatable)")->required();
    r->add_option("-o,--output", restore.output_dir, "Output directory")->required();

    BlendOptions blend;
    auto* b = app.add_subcommand("blend", "Combine restorations into a sharper image");
    b->add_option("candidates", blend.candidates, "Two or more candidate images")->required()->expected(2, -1);
    b->add_option("-o,--output", blend.output, "Blended image path")->required();
    b->add_option("--report", blend.report, "Report path (default: <output>.blend.txt)");
    b->add_option("--eta", blend.eta, "Stop when the per-round Q gain falls below this")->capture_default_str();
    b->add_option("--epsilon-w", blend.epsilon_w, "Stop when the lowest weight reaches this")->capture_default_str();
    b->add_option("--max-rounds", blend.max_rounds, "Hard cap on rounds")->capture_default_str();
    add_q_options(b, blend.q);

    EvalOptions eval;
    auto* e = app.add_subcommand("eval", "Compare restorations against originals");
    e->add_option("original", eval.original_dir, "Directory of sharp originals")->required();
    e->add_option("degraded", eval.degraded_dir, "Directory of degraded inputs")->required();
    e->add_option("restored", eval.restored_dir, "Directory of restored outputs")->required();
    e->add_option("--csv", eval.csv, "CSV path (default: <restored>/eval.csv)");
    add_q_options(e, eval.q);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& error) {
        return app.exit(error, out, err);
    }

    try {
        if (*d) return run_degrade(degrade, out, err);
        if (*t) return run_train(train, out, err);
        if (*r) return run_restore(restore, out, err);
        if (*b) return run_blend(blend, out, err);
        if (*e) return run_eval(eval, out, err);
    } catch (const std::exception& error) {
        err << "error: " << error.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace deblur::tools
