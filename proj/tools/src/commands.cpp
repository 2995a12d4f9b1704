#include "deblur_tools/commands.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>

#include "deblur/blending.hpp"
#include "deblur/filter_bank.hpp"
#include "deblur/filter_learning.hpp"
#include "deblur/image_io.hpp"
#include "deblur/inference.hpp"
#include "deblur/kernel_spec.hpp"
#include "deblur/parallel.hpp"
#include "deblur_tools/manifest.hpp"
#include "deblur_tools/report.hpp"

namespace deblur::tools {

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".pgm";
}

std::map<std::string, std::string> manifest_text(const fs::path& manifest) {
    return {{"Software", std::string("deblur ") + RunManifest::version()}, {"Manifest", manifest.generic_string()}};
}

QuantConfig quant_from(const TrainOptions& o) {
    if (o.strength_thresholds.size() != 2 || o.coherence_thresholds.size() != 2)
        throw std::invalid_argument("strength and coherence thresholds take exactly two values each");
    QuantConfig q{o.strength_thresholds[0], o.strength_thresholds[1], o.coherence_thresholds[0], o.coherence_thresholds[1]};
    q.validate();
    return q;
}

nlohmann::json qconfig_json(const QConfig& q) {
    return {{"patch_size", q.patch_size}, {"tau", q.tau}, {"scale", q.scale}};
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + ": cannot create output directory");
}

}  // namespace

std::vector<fs::path> collect_images(const fs::path& path) {
    if (fs::is_regular_file(path)) return {path};
    if (!fs::is_directory(path)) throw std::runtime_error(path.string() + ": no such file or directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::string restored_name(const fs::path& input, const fs::path& bank, std::size_t bank_count) {
    if (bank_count <= 1) return input.stem().string() + ".png";
    return input.stem().string() + "__" + bank.stem().string() + ".png";
}

std::uint64_t file_seed(std::uint64_t seed, const std::string& name) noexcept {
    std::uint64_t hash = 14695981039346656037ull;
    for (const unsigned char c : name) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return seed ^ (hash + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

int run_degrade(const DegradeOptions& o, std::ostream& out, std::ostream& err) {
    const KernelSpec spec = KernelSpec::parse(o.kernel);
    const BlurKernel kernel = spec.build();
    if (o.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
    const auto inputs = collect_images(o.input);
    if (inputs.empty()) throw std::runtime_error(o.input.string() + ": no PNG or PGM images found");
    ensure_directory(o.output_dir);

    RunManifest manifest("degrade");
    manifest.set_config({{"kernel", spec.to_string()}, {"noise_sigma", o.noise_sigma}, {"seed", o.seed}});
    const fs::path manifest_file = manifest_path_for(o.output_dir, true);

    int failures = 0;
    for (const auto& input : inputs) {
        manifest.add_input(input);
        try {
            const Image image = load_image(input);
            const NoiseSpec noise{o.noise_sigma, file_seed(o.seed, input.filename().string())};
            const fs::path target = o.output_dir / (input.stem().string() + ".png");
            save_image(degrade(image, kernel, noise), target, manifest_text(manifest_file));
            manifest.add_output(target);
            out << input.filename().string() << " -> " << target.string() << '\n';
        } catch (const std::exception& e) {
            err << "error: " << input.string() << ": " << e.what() << '\n';
            ++failures;
        }
    }
    manifest.mark("total");
    manifest.write(manifest_file);
    return failures ? 1 : 0;
}

int run_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
    TrainConfig config;
    config.patch_size = o.patch_size;
    config.stride = o.stride;
    config.kernel = KernelSpec::parse(o.kernel);
    config.quant = quant_from(o);
    config.pinv_tolerance = o.pinv_tolerance;
    config.augment = !o.no_augment;
    config.validate();

    const auto files = collect_images(o.corpus);
    if (files.empty()) throw std::runtime_error(o.corpus.string() + ": training corpus is empty");

    RunManifest manifest("train");
    manifest.set_config({{"kernel", config.kernel.to_string()},
                         {"patch_size", config.patch_size},
                         {"stride", config.resolved_stride(files.size())},
                         {"strength_thresholds", {config.quant.strength_low, config.quant.strength_high}},
                         {"coherence_thresholds", {config.quant.coherence_low, config.quant.coherence_high}},
                         {"pinv_tolerance", config.pinv_tolerance},
                         {"augment", config.augment}});

    int failures = 0;
    Trainer trainer(config, files.size());
    for (const auto& file : files) {
        manifest.add_input(file);
        try {
            trainer.add(load_image(file));
        } catch (const std::exception& e) {
            err << "warning: skipping " << file.string() << ": " << e.what() << '\n';
            ++failures;
        }
    }
    if (trainer.images() == 0) throw std::runtime_error("no readable training images in " + o.corpus.string());
    manifest.mark("accumulate");

    const FilterBank bank = std::move(trainer).finish();
    manifest.mark("solve");
    save_filter_bank(bank, o.output);
    manifest.add_output(o.output);
    manifest.mark("total");
    manifest.write(manifest_path_for(o.output, false));

    out << "trained " << o.output.string() << " from " << (files.size() - failures) << " image(s), patch size "
        << bank.patch_size << ", kernel " << bank.kernel_tag << '\n';
    write_bucket_histogram(bank.counts, out);
    return failures ? 1 : 0;
}

int run_restore(const RestoreOptions& o, std::ostream& out, std::ostream& err) {
    if (o.banks.empty()) throw std::invalid_argument("at least one filter bank is required");
    std::vector<FilterBank> banks;
    for (const auto& path : o.banks) banks.push_back(load_filter_bank(path));
    const auto inputs = collect_images(o.input);
    if (inputs.empty()) throw std::runtime_error(o.input.string() + ": no PNG or PGM images found");
    ensure_directory(o.output_dir);

    RunManifest manifest("restore");
    nlohmann::json bank_info = nlohmann::json::array();
    for (std::size_t b = 0; b < banks.size(); ++b)
        bank_info.push_back({{"path", o.banks[b].generic_string()},
                             {"patch_size", banks[b].patch_size},
                             {"kernel", banks[b].kernel_tag}});
    manifest.set_config({{"banks", bank_info}});
    const fs::path manifest_file = manifest_path_for(o.output_dir, true);

    int failures = 0;
    for (const auto& input : inputs) {
        manifest.add_input(input);
        try {
            const Image degraded = load_image(input);
            for (std::size_t b = 0; b < banks.size(); ++b) {
                const fs::path target = o.output_dir / restored_name(input, o.banks[b], banks.size());
                save_image(restore(degraded, banks[b]), target, manifest_text(manifest_file));
                manifest.add_output(target);
                out << input.filename().string() << " -> " << target.string() << '\n';
            }
        } catch (const std::exception& e) {
            err << "error: " << input.string() << ": " << e.what() << '\n';
            ++failures;
        }
    }
    manifest.mark("total");
    manifest.write(manifest_file);
    return failures ? 1 : 0;
}

int run_blend(const BlendOptions& o, std::ostream& out, std::ostream&) {
    if (o.candidates.size() < 2) throw std::invalid_argument("blending needs at least two candidate images");
    BlendConfig config{o.eta, o.epsilon_w, o.max_rounds};
    config.validate();
    o.q.validate();

    RunManifest manifest("blend");
    manifest.set_config({{"eta", o.eta}, {"epsilon_w", o.epsilon_w}, {"max_rounds", o.max_rounds}, {"q", qconfig_json(o.q)}});
    std::vector<Image> candidates;
    std::vector<std::string> names;
    for (const auto& path : o.candidates) {
        manifest.add_input(path);
        candidates.push_back(load_image(path));
        names.push_back(path.filename().string());
    }

    const BlendResult result = blend(std::move(candidates), config, o.q);
    const fs::path manifest_file = manifest_path_for(o.output, false);
    fs::path report_file = o.report.value_or(fs::path(o.output.string() + ".blend.txt"));

    save_image(result.image, o.output, manifest_text(manifest_file));
    manifest.add_output(o.output);
    {
        std::ofstream report(report_file);
        if (!report) throw std::runtime_error(report_file.string() + ": cannot write blend report");
        write_blend_report(result, names, manifest_file.generic_string(), report);
    }
    manifest.add_output(report_file);
    manifest.mark("total");
    manifest.write(manifest_file);

    out << "blended " << names.size() << " candidates in " << result.state.round << " round(s), termination "
        << to_string(result.termination) << ", Q " << format_number(result.state.q_history.back()) << '\n';
    out << "report: " << report_file.string() << '\n';
    return 0;
}

namespace {

std::optional<fs::path> counterpart(const fs::path& dir, const fs::path& original) {
    for (const char* ext : {".png", ".pgm", ".PNG", ".PGM"}) {
        fs::path candidate = dir / (original.stem().string() + ext);
        if (fs::is_regular_file(candidate)) return candidate;
    }
    return std::nullopt;
}

}  // namespace

int run_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
    o.q.validate();
    const auto originals = collect_images(o.original_dir);
    if (originals.empty()) throw std::runtime_error(o.original_dir.string() + ": no PNG or PGM images found");

    RunManifest manifest("eval");
    manifest.set_config({{"original_dir", o.original_dir.generic_string()},
                         {"degraded_dir", o.degraded_dir.generic_string()},
                         {"restored_dir", o.restored_dir.generic_string()},
                         {"q", qconfig_json(o.q)}});

    std::vector<EvalRow> rows;
    int failures = 0;
    for (const auto& original_path : originals) {
        const std::string name = original_path.stem().string();
        const auto degraded_path = counterpart(o.degraded_dir, original_path);
        const auto restored_path = counterpart(o.restored_dir, original_path);
        if (!degraded_path || !restored_path) {
            err << "error: " << name << ": missing " << (!degraded_path ? "degraded" : "restored") << " counterpart\n";
            ++failures;
            continue;
        }
        try {
            const Image original = load_image(original_path);
            const Image degraded = load_image(*degraded_path);
            const Image restored = load_image(*restored_path);
            const SharpnessReport s = sharpness_report(original, degraded, restored, o.q);
            rows.push_back({name, psnr(original, restored), ssim(original, restored), s.q_original, s.q_degraded,
                            s.q_restored, s.v, s.j, s.well_behaved});
            manifest.add_input(original_path);
            manifest.add_input(*degraded_path);
            manifest.add_input(*restored_path);
        } catch (const std::exception& e) {
            err << "error: " << name << ": " << e.what() << '\n';
            ++failures;
        }
    }

    write_eval_table(rows, out);
    const fs::path csv_path = o.csv.value_or(o.restored_dir / "eval.csv");
    {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error(csv_path.string() + ": cannot write CSV");
        write_eval_csv(rows, csv);
    }
    manifest.add_output(csv_path);
    manifest.mark("total");
    manifest.write(manifest_path_for(csv_path, false));
    out << "csv: " << csv_path.string() << '\n';
    return failures ? 1 : 0;
}

}  // namespace deblur::tools
