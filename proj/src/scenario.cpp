#include "atugv/scenario.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace atugv {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

const std::set<std::string, std::less<>> kSections{"scenario", "geometry", "network", "plan", "sim"};
const std::vector<std::string> kCoordinateNames{"lambda1", "lambda2", "sigma_r", "sigma_d", "d1", "d2"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || s.front() == '.' || s.back() == '.') return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') return false;
    }
    return s.find("..") == std::string_view::npos;
}

std::string_view strip_comment(std::string_view line) {
    for (std::size_t k = 0; k < line.size(); ++k) {
        if ((line[k] == '#' || line[k] == ';') &&
            (k == 0 || std::isspace(static_cast<unsigned char>(line[k - 1])))) {
            return line.substr(0, k);
        }
    }
    return line;
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t k = 0;
    while (k < s.size()) {
        while (k < s.size() && (std::isspace(static_cast<unsigned char>(s[k])) || s[k] == ',')) ++k;
        const std::size_t start = k;
        while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k])) && s[k] != ',') ++k;
        if (k > start) words.push_back(s.substr(start, k - start));
    }
    return words;
}

std::optional<double> to_double(std::string_view s) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<long long> to_integer(std::string_view s) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

class KeyStore {
public:
    KeyStore(std::string_view text, ParseMode mode) : mode_(mode) { parse(text); }

    Entry* find(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    // Keys "<prefix><suffix>", with the suffix returned; marks them used.
    std::vector<std::pair<std::string, Entry*>> with_prefix(const std::string& prefix) {
        std::vector<std::pair<std::string, Entry*>> out;
        for (auto it = entries_.lower_bound(prefix); it != entries_.end(); ++it) {
            if (it->first.compare(0, prefix.size(), prefix) != 0) break;
            it->second.used = true;
            out.emplace_back(it->first.substr(prefix.size()), &it->second);
        }
        return out;
    }

    double number(const std::string& key, double fallback) {
        const Entry* e = find(key);
        return e ? number(*e, key) : fallback;
    }

    double required_number(const std::string& key) {
        const Entry* e = find(key);
        if (!e) throw Error(ErrorCode::Validation, "missing required key '" + key + "'");
        return number(*e, key);
    }

    static double number(const Entry& e, const std::string& key) {
        const auto v = to_double(e.value);
        if (!v) throw ParseError(e.line, "key '" + key + "': expected a finite number, got '" + e.value + "'");
        return *v;
    }

    static long long integer(const Entry& e, const std::string& key) {
        const auto v = to_integer(e.value);
        if (!v) throw ParseError(e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
        return *v;
    }

    static std::vector<CellId> ids(const Entry& e, const std::string& key) {
        std::vector<CellId> out;
        for (std::string_view w : split_words(e.value)) {
            const auto v = to_integer(w);
            if (!v || *v < 1 || *v > 1'000'000) {
                throw ParseError(e.line, "key '" + key + "': expected cell ids, got '" + std::string(w) + "'");
            }
            out.push_back(static_cast<CellId>(*v));
        }
        return out;
    }

    static Vec2 vec2(const Entry& e, const std::string& key) {
        const auto words = split_words(e.value);
        std::optional<double> x, y;
        if (words.size() == 2) {
            x = to_double(words[0]);
            y = to_double(words[1]);
        }
        if (!x || !y) throw ParseError(e.line, "key '" + key + "': expected two numbers 'x y'");
        return {*x, *y};
    }

    // Unused keys are errors in strict mode and warnings otherwise.
    std::vector<std::string> finish() {
        std::vector<std::string> warnings;
        for (const auto& [key, e] : entries_) {
            if (e.used) continue;
            if (mode_ == ParseMode::Strict) throw ParseError(e.line, "unknown key '" + key + "'");
            warnings.push_back("line " + std::to_string(e.line) + ": ignored unknown key '" + key + "'");
        }
        return warnings;
    }

private:
    void parse(std::string_view text) {
        std::string prefix;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view raw = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            const std::string_view line = trim(strip_comment(raw));
            if (line.empty()) {
                if (end == text.size()) break;
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
                const std::string_view name = trim(line.substr(1, line.size() - 2));
                if (!is_identifier(name)) throw ParseError(line_no, "invalid section name");
                const std::string_view top = name.substr(0, name.find('.'));
                if (!kSections.contains(top) && mode_ == ParseMode::Strict) {
                    throw ParseError(line_no, "unknown section [" + std::string(name) + "]");
                }
                prefix = std::string(name) + ".";
            } else {
                const std::size_t eq = line.find('=');
                if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
                const std::string_view key = trim(line.substr(0, eq));
                const std::string_view value = trim(line.substr(eq + 1));
                if (!is_identifier(key)) throw ParseError(line_no, "invalid key '" + std::string(key) + "'");
                if (value.empty()) throw ParseError(line_no, "key '" + std::string(key) + "' has no value");
                const std::string full = prefix + std::string(key);
                if (entries_.contains(full)) throw ParseError(line_no, "duplicate key '" + full + "'");
                entries_.emplace(full, Entry{std::string(value), line_no, false});
            }
            if (end == text.size()) break;
        }
    }

    ParseMode mode_;
    std::map<std::string, Entry, std::less<>> entries_;
};

int index_suffix(const std::string& suffix, const Entry& e, const std::string& key) {
    const auto v = to_integer(suffix);
    if (!v || *v < 0 || *v > 1'000'000) throw ParseError(e.line, "key '" + key + "': bad index '" + suffix + "'");
    return static_cast<int>(*v);
}

GraphDescription read_graph(KeyStore& keys) {
    GraphDescription g;
    g.cell_radius = keys.required_number("geometry.cell_radius");
    g.arm_length = keys.required_number("geometry.arm_length");
    for (auto& [suffix, e] : keys.with_prefix("geometry.arm_length.")) {
        const std::string key = "geometry.arm_length." + suffix;
        const std::size_t dot = suffix.find('.');
        if (dot == std::string::npos) throw ParseError(e->line, "key '" + key + "': expected arm_length.<cell>.<neighbor>");
        const int cell = index_suffix(suffix.substr(0, dot), *e, key);
        const int nbr = index_suffix(suffix.substr(dot + 1), *e, key);
        g.joint_arm_lengths[{cell, nbr}] = KeyStore::number(*e, key);
    }

    std::map<int, std::vector<CellId>> layers;
    for (auto& [suffix, e] : keys.with_prefix("network.layer.")) {
        const std::string key = "network.layer." + suffix;
        layers[index_suffix(suffix, *e, key)] = KeyStore::ids(*e, key);
    }
    if (layers.empty()) throw Error(ErrorCode::Validation, "missing required keys 'network.layer.<n>'");
    int expected = 0;
    for (auto& [index, cells] : layers) {
        if (index != expected++) {
            throw Error(ErrorCode::Validation, "network layers must be numbered 0, 1, 2, ... without gaps");
        }
        g.layers.push_back(std::move(cells));
    }
    for (auto& [suffix, e] : keys.with_prefix("network.neighbors.")) {
        const std::string key = "network.neighbors." + suffix;
        g.neighbors[index_suffix(suffix, *e, key)] = KeyStore::ids(*e, key);
    }
    for (auto& [suffix, e] : keys.with_prefix("network.actuated.")) {
        const std::string key = "network.actuated." + suffix;
        g.actuated[index_suffix(suffix, *e, key)] = KeyStore::ids(*e, key);
    }
    if (const Entry* e = keys.find("network.powered")) g.powered = KeyStore::ids(*e, "network.powered");
    return g;
}

GeneralizedCoordinates read_coordinates(KeyStore& keys, const std::string& prefix,
                                        const GeneralizedCoordinates& fallback) {
    GeneralizedCoordinates c = fallback;
    double* fields[] = {&c.lambda1, &c.lambda2, &c.sigma_r, &c.sigma_d, &c.d1, &c.d2};
    for (std::size_t k = 0; k < kCoordinateNames.size(); ++k) {
        *fields[k] = keys.number(prefix + kCoordinateNames[k], *fields[k]);
    }
    return c;
}

}  // namespace

Scenario parse_scenario(std::string_view text, ParseMode mode, const std::string& default_name) {
    KeyStore keys(text, mode);

    std::string name = default_name;
    if (const Entry* e = keys.find("scenario.name")) name = e->value;

    const GraphDescription description = read_graph(keys);
    const double side_length = keys.number("geometry.side_length", 1.0);

    PlanSpec plan;
    plan.t0 = keys.number("plan.t0", 0.0);
    plan.tf = keys.required_number("plan.tf");
    if (const Entry* e = keys.find("plan.blend")) {
        const auto kind = parse_blend_kind(e->value);
        if (!kind) throw ParseError(e->line, "plan.blend must be 'linear' or 'smoothstep'");
        plan.blend = *kind;
    }
    plan.initial = read_coordinates(keys, "plan.initial.", GeneralizedCoordinates::identity());
    plan.final = read_coordinates(keys, "plan.final.", plan.initial);

    PlanOptions options;
    if (const Entry* e = keys.find("plan.samples")) options.sample_count = static_cast<int>(KeyStore::integer(*e, "plan.samples"));
    if (const Entry* e = keys.find("plan.safety_samples")) {
        options.safety_samples = static_cast<int>(KeyStore::integer(*e, "plan.safety_samples"));
    }
    if (options.sample_count < 2 || options.safety_samples < 2) {
        throw Error(ErrorCode::Validation, "plan.samples and plan.safety_samples must be at least 2");
    }

    SimConfig sim;
    if (const Entry* e = keys.find("sim.model")) {
        const auto model = parse_dynamics_model(e->value);
        if (!model) throw ParseError(e->line, "sim.model must be 'single_integrator' or 'double_integrator'");
        sim.model = *model;
    }
    sim.dt = keys.number("sim.dt", sim.dt);
    sim.gain = keys.number("sim.alpha", sim.gain);
    for (auto& [suffix, e] : keys.with_prefix("sim.alpha.")) {
        const std::string key = "sim.alpha." + suffix;
        sim.cell_gains[index_suffix(suffix, *e, key)] = KeyStore::number(*e, key);
    }
    sim.velocity_gain = keys.number("sim.k_v", sim.velocity_gain);
    if (const Entry* e = keys.find("sim.initial")) {
        const auto mode_value = parse_initial_condition(e->value);
        if (!mode_value) throw ParseError(e->line, "sim.initial must be 'reference' or 'perturbed'");
        sim.initial = *mode_value;
    }
    for (auto& [suffix, e] : keys.with_prefix("sim.offset.")) {
        const std::string key = "sim.offset." + suffix;
        sim.offsets[index_suffix(suffix, *e, key)] = KeyStore::vec2(*e, key);
    }
    const double threshold = keys.number("sim.error_threshold", 1e-3);
    if (!(threshold > 0.0)) throw Error(ErrorCode::Validation, "sim.error_threshold must be positive");

    std::vector<std::string> warnings = keys.finish();

    // Module-level invariants, in dependency order.
    CellGraph graph = CellGraph::build(description);
    ReferenceConfiguration reference = solve_reference_positions(graph, side_length);
    validate(plan);
    validate(sim, plan, graph);

    return Scenario{std::move(name), side_length, std::move(graph), std::move(reference),
                    plan,            options,     sim,              threshold,
                    std::move(warnings)};
}

Scenario load_scenario(const std::filesystem::path& path, ParseMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), mode, path.stem().string());
}

}  // namespace atugv
