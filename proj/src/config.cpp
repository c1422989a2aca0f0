// SPDX-License-Identifier: Apache-2.0
//
// impedance-lab: antenna impedance and channel estimation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "implab/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>

#include "implab/errors.hpp"

namespace implab {

namespace pt = boost::property_tree;

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::Iid: return "iid";
        case Scenario::Moderate: return "moderate";
        case Scenario::Slow: return "slow";
        case Scenario::Custom: return "custom";
    }
    return "?";
}

std::string_view to_string(Generator g) noexcept {
    return g == Generator::Sos ? "sos" : "factorization";
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw Error(Errc::ConfigError, "config field '" + key + "': " + why);
}

std::optional<double> to_double(std::string_view s) {
    std::string tmp(s);
    boost::algorithm::trim(tmp);
    if (tmp.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(tmp, &used);
        if (used != tmp.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

class Section {
public:
    explicit Section(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> get(const std::string& key) const {
        auto v = tree_.get_optional<std::string>(key);
        if (!v) return std::nullopt;
        std::string s = *v;
        boost::algorithm::trim(s);
        return s;
    }
    std::string required(const std::string& key) const {
        auto v = get(key);
        if (!v || v->empty()) bad(key, "missing");
        return *v;
    }
    double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
        auto v = get(key);
        if (!v) {
            if (fallback) return *fallback;
            bad(key, "missing");
        }
        auto d = to_double(*v);
        if (!d) bad(key, "not a number: '" + *v + "'");
        return *d;
    }
    int count(const std::string& key, std::optional<int> fallback = std::nullopt) const {
        auto v = get(key);
        if (!v) {
            if (fallback) return *fallback;
            bad(key, "missing");
        }
        int out = 0;
        auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
        if (ec != std::errc{} || ptr != v->data() + v->size()) bad(key, "not an integer: '" + *v + "'");
        return out;
    }
    cplx complex(const std::string& key) const {
        const std::string v = required(key);
        auto z = parse_complex(v);
        if (!z) bad(key, "not a complex number: '" + v + "'");
        return *z;
    }

private:
    const pt::ptree& tree_;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, s, boost::algorithm::is_any_of(", "),
                            boost::algorithm::token_compress_on);
    std::erase_if(parts, [](const std::string& p) { return p.empty(); });
    return parts;
}

}  // namespace

std::optional<cplx> parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) return std::nullopt;
    const auto jpos = s.find_first_of("ji");
    if (jpos == std::string::npos) {
        auto r = to_double(s);
        if (!r) return std::nullopt;
        return cplx(*r, 0.0);
    }
    if (s.find_first_of("ji", jpos + 1) != std::string::npos) return std::nullopt;

    // Split before the last sign that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.find_first_of("ji") == std::string::npos) return std::nullopt;
    im_part.erase(im_part.find_first_of("ji"), 1);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    double re = 0.0;
    if (!re_part.empty()) {
        auto r = to_double(re_part);
        if (!r) return std::nullopt;
        re = *r;
    }
    auto im = to_double(im_part);
    if (!im) return std::nullopt;
    return cplx(re, *im);
}

void ExperimentConfig::validate() const {
    if (n < 1) bad("N", "must be >= 1");
    if (l < 1) bad("L", "must be >= 1");
    if (t < 2 || t % 2 != 0 || t / 2 < n) bad("T", "must be even with T/2 >= N");
    if (!(p > 0.0)) bad("P", "must be > 0");
    if (trials < 1) bad("trials", "must be >= 1");
    if (snr_grid_db.empty()) bad("snr_grid_db", "must be nonempty");
    for (double s : snr_grid_db)
        if (std::isnan(s)) bad("snr_grid_db", "NaN entry");
    if (estimators.empty()) bad("estimators", "must be nonempty");
    for (Method m : estimators)
        if (m == Method::ML1 && l != 1) bad("estimators", "ML1 requires L = 1");
    if (scenario != Scenario::Iid) {
        if (!(f_c_hz > 0.0)) bad("f_c_hz", "must be > 0");
        if (!(t_s > 0.0)) bad("T_s", "must be > 0");
        if (!(v_kmh >= 0.0)) bad("v_kmh", "must be >= 0");
    }
    if (!(z_a.real() > 0.0)) bad("Z_A", "real part must be > 0");
    if (!(z1.real() > 0.0)) bad("Z1", "real part must be > 0");
    if (!(z2.real() > 0.0)) bad("Z2", "real part must be > 0");
    if (z1 == z2) bad("Z2", "must differ from Z1");
    if (!(sigma_g2 > 0.0)) bad("sigma_g2", "must be > 0");
    if (loss_db && !(*loss_db >= 0.0)) bad("loss_db", "must be >= 0");
    if (sos_sinusoids < 8) bad("sos_sinusoids", "must be >= 8");
}

ExperimentConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(Errc::ConfigError, std::string("config syntax: ") + e.message() + " (line " +
                                           std::to_string(e.line()) + ")");
    }
    auto sec = tree.get_child_optional("experiment");
    if (!sec) throw Error(Errc::ConfigError, "config field '[experiment]': section missing");
    const Section s(*sec);

    ExperimentConfig cfg;
    const std::string scen = s.required("scenario");
    if (scen == "iid") cfg.scenario = Scenario::Iid;
    else if (scen == "moderate") cfg.scenario = Scenario::Moderate;
    else if (scen == "slow") cfg.scenario = Scenario::Slow;
    else if (scen == "custom") cfg.scenario = Scenario::Custom;
    else bad("scenario", "unknown tag '" + scen + "'");

    cfg.n = s.count("N");
    cfg.l = s.count("L");
    cfg.t = s.count("T");
    cfg.p = s.real("P");
    cfg.f_c_hz = s.real("f_c_hz", 2.1e9);
    cfg.t_s = s.real("T_s", 1e-3);
    switch (cfg.scenario) {
        case Scenario::Iid: cfg.v_kmh = s.real("v_kmh", 0.0); break;
        case Scenario::Moderate: cfg.v_kmh = s.real("v_kmh", 50.0); break;
        case Scenario::Slow: cfg.v_kmh = s.real("v_kmh", 5.0); break;
        case Scenario::Custom: cfg.v_kmh = s.real("v_kmh"); break;
    }
    cfg.z_a = s.complex("Z_A");
    cfg.z1 = s.complex("Z1");
    cfg.z2 = s.complex("Z2");
    cfg.sigma_g2 = s.real("sigma_g2", 1.0);

    for (const auto& item : split_list(s.required("snr_grid_db"))) {
        auto d = to_double(item);
        if (!d) bad("snr_grid_db", "not a number: '" + item + "'");
        cfg.snr_grid_db.push_back(*d);
    }
    cfg.trials = s.count("trials");
    {
        const std::string seed = s.required("seed");
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), v);
        if (ec != std::errc{} || ptr != seed.data() + seed.size()) bad("seed", "not an unsigned integer");
        cfg.seed = v;
    }
    for (const auto& item : split_list(s.required("estimators"))) {
        auto m = parse_method(item);
        if (!m) bad("estimators", "unknown estimator '" + item + "'");
        cfg.estimators.push_back(*m);
    }
    if (s.get("loss_db")) cfg.loss_db = s.real("loss_db");
    cfg.output_path = s.get("output").value_or("");
    if (auto g = s.get("generator")) {
        if (*g == "factorization") cfg.generator = Generator::Factorization;
        else if (*g == "sos") cfg.generator = Generator::Sos;
        else bad("generator", "unknown tag '" + *g + "'");
    }
    cfg.sos_sinusoids = s.count("sos_sinusoids", 16);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ConfigError, "config field '--config': cannot open '" + path + "'");
    return parse_config(in);
}

ComplexMat ChannelSource::draw(Substream& rng) const {
    if (generator == Generator::Sos) {
        return sample_H_sos(spec.n(), spec.l(), spec.sigma_h2(), f_d, t_s, sos_sinusoids, rng).h;
    }
    return sample_H(spec, rng).h;
}

ChannelSource make_channel_source(const ExperimentConfig& cfg, double sigma_h2) {
    if (cfg.scenario == Scenario::Iid) {
        return {ChannelSpec::iid(cfg.n, cfg.l, sigma_h2), Generator::Factorization, 0.0, cfg.t_s,
                cfg.sos_sinusoids};
    }
    const double f_d = doppler_hz(cfg.v_kmh, cfg.f_c_hz);
    return {ChannelSpec(cfg.n, sigma_h2, clarke_correlation(cfg.l, f_d, cfg.t_s)), cfg.generator,
            f_d, cfg.t_s, cfg.sos_sinusoids};
}

}  // namespace implab
