#include "page/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "page/errors.hpp"
#include "page/image_io.hpp"
#include "page/pipeline.hpp"
#include "page/tensor_io.hpp"
#include "page/viz.hpp"

namespace page {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

EmitKind parse_emit_token(const std::string& token) {
    if (token == "analog_bins") return EmitKind::analog_bins;
    if (token == "binary_bins") return EmitKind::binary_bins;
    if (token == "overlay") return EmitKind::overlay;
    if (token == "raw_tensor") return EmitKind::raw_tensor;
    throw invalid_parameter("emit: unknown artifact '" + token +
                            "' (expected analog_bins, binary_bins, overlay, raw_tensor)");
}

json load_json_file(const std::string& path, const std::string& field) {
    std::ifstream in(path);
    if (!in) {
        throw invalid_parameter(field + ": cannot read '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw invalid_parameter(field + ": '" + path + "' is not valid JSON: " + e.what());
    }
}

// Kernel fields as they appear in config files and band files.
KernelParams params_from_json(const json& j, const KernelParams& base,
                              const std::string& field) {
    static const std::set<std::string> known = {
        "mu1",  "mu2",  "sigma1",    "sigma2",     "s1",         "s2",
        "bins", "morph", "sigma_lpf", "thresh_min", "thresh_max",
    };
    if (!j.is_object()) {
        throw invalid_parameter(field + ": band parameters must be a JSON object");
    }
    KernelParams p = base;
    try {
        for (const auto& [key, value] : j.items()) {
            if (!known.count(key)) {
                throw invalid_parameter(field + ": unknown field '" + key + "'");
            }
            if (key == "mu1") p.mu_1 = value.get<double>();
            else if (key == "mu2") p.mu_2 = value.get<double>();
            else if (key == "sigma1") p.sigma_1 = value.get<double>();
            else if (key == "sigma2") p.sigma_2 = value.get<double>();
            else if (key == "s1") p.s_1 = value.get<double>();
            else if (key == "s2") p.s_2 = value.get<double>();
            else if (key == "bins") p.direction_bins = value.get<int>();
            else if (key == "sigma_lpf") p.sigma_lpf = value.get<double>();
            else if (key == "thresh_min") p.thresh_min = value.get<double>();
            else if (key == "thresh_max") p.thresh_max = value.get<double>();
            else if (key == "morph") p.morph_flag = value.get<bool>();
        }
    } catch (const json::exception& e) {
        throw invalid_parameter(field + ": " + e.what());
    }
    return p;
}

void check_emit_mode(const RunConfig& config) {
    for (const KernelParams& band : config.bands) {
        if (config.emit.count(EmitKind::analog_bins) && band.morph_flag) {
            throw invalid_parameter("emit: analog_bins requires --no-morph");
        }
        if (config.emit.count(EmitKind::binary_bins) && !band.morph_flag) {
            throw invalid_parameter("emit: binary_bins requires --morph");
        }
    }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    // First pass: locate --config so its values become the flag defaults.
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        }
    }

    RunConfig config;
    KernelParams base;
    std::vector<std::string> emit_tokens;
    json config_bands = json::array();

    if (!config_path.empty()) {
        const json j = load_json_file(config_path, "config");
        if (!j.is_object()) {
            throw invalid_parameter("config: top-level value must be an object");
        }
        static const std::set<std::string> top_level = {"input", "output_dir", "gray",
                                                        "emit", "bands"};
        json kernel_fields = json::object();
        for (const auto& [key, value] : j.items()) {
            if (top_level.count(key)) {
                continue;
            }
            kernel_fields[key] = value;
        }
        base = params_from_json(kernel_fields, base, "config");
        try {
            if (j.contains("input")) config.input_path = j["input"].get<std::string>();
            if (j.contains("output_dir")) config.output_dir = j["output_dir"].get<std::string>();
            if (j.contains("gray")) config.grayscale = j["gray"].get<bool>();
            if (j.contains("emit")) emit_tokens = j["emit"].get<std::vector<std::string>>();
            if (j.contains("bands")) config_bands = j["bands"];
        } catch (const json::exception& e) {
            throw invalid_parameter(std::string("config: ") + e.what());
        }
    }

    CLI::App app{"PAGE: directional, frequency-selective edge extraction"};
    app.name("page");

    std::string ignored_config;
    std::vector<std::string> band_files;
    app.add_option("input", config.input_path, "Input image (PNG, JPEG, or PGM)");
    app.add_option("-o,--output", config.output_dir, "Output directory");
    app.add_option("--config", ignored_config, "JSON config file; explicit flags override it");
    app.add_option("--mu1", base.mu_1, "Center frequency of the Gaussian passband");
    app.add_option("--mu2", base.mu_2, "Center of the log-normal passband");
    app.add_option("--sigma1", base.sigma_1, "Width of the Gaussian passband");
    app.add_option("--sigma2", base.sigma_2, "Width of the log-normal passband");
    app.add_option("--s1", base.s_1, "Strength of the Gaussian factor");
    app.add_option("--s2", base.s_2, "Strength of the log-normal factor");
    app.add_option("--bins", base.direction_bins, "Number of direction bins (1-179)");
    app.add_option("--sigma-lpf", base.sigma_lpf, "Width of the denoising low-pass filter");
    app.add_option("--thresh-min", base.thresh_min, "Lower bipolar threshold (radians)");
    app.add_option("--thresh-max", base.thresh_max, "Upper bipolar threshold (radians)");
    app.add_flag("--morph,!--no-morph", base.morph_flag,
                 "Binary edge maps (--morph) or analog phase (--no-morph)");
    app.add_option("--band", band_files,
                   "JSON file describing an extra band (repeatable); fields default "
                   "to the primary band's values")
        ->expected(1)
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    std::string emit_csv;
    app.add_option("--emit", emit_csv,
                   "Comma-separated artifacts to write: analog_bins, binary_bins, "
                   "overlay, raw_tensor");
    app.add_flag("--gray", config.grayscale, "Collapse color input to luma first");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help() << std::flush;
        throw;
    }

    config.bands.push_back(base);
    for (const json& entry : config_bands) {
        config.bands.push_back(params_from_json(entry, base, "bands"));
    }
    for (const std::string& path : band_files) {
        config.bands.push_back(params_from_json(load_json_file(path, "band"), base, "band"));
    }

    if (!emit_csv.empty()) {
        emit_tokens.clear();
        std::size_t start = 0;
        while (start <= emit_csv.size()) {
            const std::size_t comma = emit_csv.find(',', start);
            if (comma == std::string::npos) {
                emit_tokens.push_back(emit_csv.substr(start));
                break;
            }
            emit_tokens.push_back(emit_csv.substr(start, comma - start));
            start = comma + 1;
        }
    }
    if (emit_tokens.empty()) {
        emit_tokens = {"overlay"};
    }
    for (const std::string& token : emit_tokens) {
        config.emit.insert(parse_emit_token(token));
    }

    if (config.input_path.empty()) {
        throw invalid_parameter("input: an input image path is required");
    }
    for (const KernelParams& band : config.bands) {
        band.validate();
    }
    check_emit_mode(config);
    return config;
}

namespace {

Array2D<std::uint8_t> channel_to_bytes(const Array2D<double>& plane, bool binary) {
    constexpr double pi = std::numbers::pi;
    Array2D<std::uint8_t> bytes(plane.rows(), plane.cols());
    for (int r = 0; r < plane.rows(); ++r) {
        for (int c = 0; c < plane.cols(); ++c) {
            if (binary) {
                bytes(r, c) = plane(r, c) != 0.0 ? 255 : 0;
            } else {
                const double scaled = (plane(r, c) + pi) / (2.0 * pi) * 255.0;
                bytes(r, c) = static_cast<std::uint8_t>(
                    std::clamp(std::lround(scaled), 0L, 255L));
            }
        }
    }
    return bytes;
}

std::string bin_file_name(int bin, double direction) {
    const long degrees = std::lround(direction * 180.0 / std::numbers::pi);
    char name[64];
    std::snprintf(name, sizeof(name), "bin_%02d_%ld.png", bin, degrees);
    return name;
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw io_error(dir.string() + ": cannot create directory: " + ec.message());
    }
}

void write_bin_images(const fs::path& dir, const FeatureTensor& tensor) {
    make_dir(dir);
    for (int bin = 0; bin < tensor.bins(); ++bin) {
        const auto idx = static_cast<std::size_t>(bin);
        const fs::path file = dir / bin_file_name(bin, tensor.directions[idx]);
        save_png_gray(file.string(),
                      channel_to_bytes(tensor.channels[idx], tensor.params.morph_flag));
    }
}

}  // namespace

int run(const RunConfig& config) {
    const LoadedImage loaded = load_image(config.input_path);

    std::vector<ImagePlane> channels;
    if (config.grayscale) {
        channels.push_back(to_grayscale(loaded));
    } else {
        channels = loaded.channels;
    }

    make_dir(config.output_dir);

    for (std::size_t band_index = 0; band_index < config.bands.size(); ++band_index) {
        fs::path band_dir = config.output_dir;
        if (config.bands.size() > 1) {
            band_dir /= "band_" + std::to_string(band_index);
            make_dir(band_dir);
        }

        const std::vector<FeatureTensor> tensors =
            page_run_color(channels, config.bands[band_index]);
        const bool wants_bins = config.emit.count(EmitKind::analog_bins) != 0 ||
                                config.emit.count(EmitKind::binary_bins) != 0;

        if (wants_bins) {
            if (tensors.size() == 1) {
                write_bin_images(band_dir, tensors.front());
            } else {
                for (std::size_t k = 0; k < tensors.size(); ++k) {
                    write_bin_images(band_dir / ("ch_" + std::to_string(k)), tensors[k]);
                }
            }
        }
        if (config.emit.count(EmitKind::overlay)) {
            save_png_rgb((band_dir / "overlay.png").string(), composite_channels(tensors));
        }
        if (config.emit.count(EmitKind::raw_tensor)) {
            const FeatureTensor combined =
                tensors.size() == 1 ? tensors.front() : merge_bins_max(tensors);
            write_feature_tensor((band_dir / "features.tnsr").string(), combined);
        }
    }
    return 0;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }

    try {
        return run(parse_args(args));
    } catch (const CLI::CallForHelp&) {
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "page: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "page: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {  // invalid_parameter, shape_error
        std::cerr << "page: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "page: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace page
