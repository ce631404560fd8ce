#include "pcorr/sequences.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pcorr/errors.hpp"

namespace pcorr {

SequenceSpec SequenceSpec::power(double theta, std::string label) {
    SequenceSpec s;
    s.kind = SeqKind::power;
    s.theta = theta;
    s.label = label.empty() ? "power:" + std::to_string(theta) : std::move(label);
    return s;
}

SequenceSpec SequenceSpec::polynomial(std::vector<double> coeffs, std::string label) {
    SequenceSpec s;
    s.kind = SeqKind::polynomial;
    s.coeffs = std::move(coeffs);
    s.label = label.empty() ? "poly" : std::move(label);
    return s;
}

SequenceSpec SequenceSpec::n_log_n() {
    SequenceSpec s;
    s.kind = SeqKind::n_log_n;
    s.label = "nlogn";
    return s;
}

SequenceSpec SequenceSpec::n_plus_log_n() {
    SequenceSpec s;
    s.kind = SeqKind::n_plus_log_n;
    s.label = "n+logn";
    return s;
}

SequenceSpec SequenceSpec::lacunary(double ratio, std::string label) {
    SequenceSpec s;
    s.kind = SeqKind::lacunary;
    s.ratio = ratio;
    s.label = label.empty() ? "lacunary:" + std::to_string(ratio) : std::move(label);
    return s;
}

SequenceSpec SequenceSpec::explicit_seq(std::vector<double> values, std::string label) {
    SequenceSpec s;
    s.kind = SeqKind::explicit_values;
    s.values = std::move(values);
    s.label = label.empty() ? "explicit" : std::move(label);
    return s;
}

void SequenceSpec::validate() const {
    switch (kind) {
        case SeqKind::power:
            if (!(theta > 0.0)) throw BadParams("power sequence requires theta > 0");
            break;
        case SeqKind::polynomial: {
            if (coeffs.size() < 2) throw BadParams("polynomial requires degree >= 1");
            if (!(coeffs.back() > 0.0))
                throw BadParams("polynomial requires a positive leading coefficient");
            break;
        }
        case SeqKind::lacunary:
            if (!(ratio > 1.0)) throw BadParams("lacunary sequence requires ratio > 1");
            break;
        case SeqKind::explicit_values:
            if (values.empty()) throw BadParams("explicit sequence is empty");
            break;
        default:
            break;
    }
}

namespace {

const char* kind_name(SeqKind k) {
    switch (k) {
        case SeqKind::power: return "power";
        case SeqKind::polynomial: return "polynomial";
        case SeqKind::n_log_n: return "n_log_n";
        case SeqKind::n_plus_log_n: return "n_plus_log_n";
        case SeqKind::lacunary: return "lacunary";
        case SeqKind::explicit_values: return "explicit";
    }
    return "?";
}

SeqKind kind_from_name(const std::string& s) {
    if (s == "power") return SeqKind::power;
    if (s == "polynomial") return SeqKind::polynomial;
    if (s == "n_log_n") return SeqKind::n_log_n;
    if (s == "n_plus_log_n") return SeqKind::n_plus_log_n;
    if (s == "lacunary") return SeqKind::lacunary;
    if (s == "explicit") return SeqKind::explicit_values;
    throw BadParams("unknown sequence kind: " + s);
}

double eval_term(const SequenceSpec& spec, std::int64_t n) {
    const double dn = static_cast<double>(n);
    switch (spec.kind) {
        case SeqKind::power:
            return std::pow(dn, spec.theta);
        case SeqKind::polynomial: {
            double v = 0.0;
            for (std::size_t i = spec.coeffs.size(); i-- > 0;) v = v * dn + spec.coeffs[i];
            return v;
        }
        case SeqKind::n_log_n:
            return dn * std::log(dn);
        case SeqKind::n_plus_log_n:
            return dn + std::log(dn);
        case SeqKind::lacunary:
            return std::pow(spec.ratio, dn);
        case SeqKind::explicit_values:
            return spec.values[static_cast<std::size_t>(n - 1)];
    }
    return 0.0;
}

} // namespace

nlohmann::json SequenceSpec::to_json() const {
    nlohmann::json params = nlohmann::json::object();
    switch (kind) {
        case SeqKind::power: params["theta"] = theta; break;
        case SeqKind::polynomial: params["coeffs"] = coeffs; break;
        case SeqKind::lacunary: params["ratio"] = ratio; break;
        case SeqKind::explicit_values: params["values"] = values; break;
        default: break;
    }
    return nlohmann::json{{"kind", kind_name(kind)}, {"params", params}, {"label", label}};
}

SequenceSpec SequenceSpec::from_json(const nlohmann::json& j) {
    SequenceSpec s;
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    const auto& p = j.at("params");
    switch (s.kind) {
        case SeqKind::power: s.theta = p.at("theta").get<double>(); break;
        case SeqKind::polynomial: s.coeffs = p.at("coeffs").get<std::vector<double>>(); break;
        case SeqKind::lacunary: s.ratio = p.at("ratio").get<double>(); break;
        case SeqKind::explicit_values: s.values = p.at("values").get<std::vector<double>>(); break;
        default: break;
    }
    s.label = j.value("label", "");
    s.validate();
    return s;
}

SequenceSpec SequenceSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "power") return power(std::stod(rest));
    if (head == "poly" || head == "polynomial") {
        std::vector<double> cs;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) cs.push_back(std::stod(tok));
        return polynomial(std::move(cs));
    }
    if (head == "nlogn") return n_log_n();
    if (head == "n+logn" || head == "npluslogn") return n_plus_log_n();
    if (head == "lacunary") return lacunary(std::stod(rest));
    if (head == "file") return load_explicit_file(rest);
    throw BadParams("cannot parse sequence spec: " + text);
}

SequenceSpec SequenceSpec::load_explicit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParams("cannot open sequence file: " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        vals.push_back(std::stod(line));
    }
    auto s = explicit_seq(std::move(vals), "file:" + path);
    s.validate();
    return s;
}

double min_gap_of(std::span<const double> values) {
    if (values.size() < 2) throw TooShort("min_gap requires N >= 2");
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) g = std::min(g, values[i] - values[i - 1]);
    return g;
}

RealSeq materialize(const SequenceSpec& spec, std::int64_t N) {
    spec.validate();
    if (N < 1) throw BadParams("materialize requires N >= 1");
    if (spec.kind == SeqKind::explicit_values &&
        N > static_cast<std::int64_t>(spec.values.size()))
        throw BadParams("explicit sequence shorter than requested N");

    RealSeq seq;
    seq.spec = spec;
    seq.values.resize(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        double v = eval_term(spec, n);
        if (!std::isfinite(v)) throw Overflow("sequence value exceeds representable range");
        seq.values[static_cast<std::size_t>(n - 1)] = v;
    }
    // x_1 = 0 is tolerated for n log n only (1*log 1 = 0); everything else
    // must be strictly positive.
    const double floor0 = spec.kind == SeqKind::n_log_n ? -0.0 : 0.0;
    if (seq.values.front() < floor0 || (spec.kind != SeqKind::n_log_n && seq.values.front() <= 0.0))
        throw NonIncreasing("sequence values must be positive");
    for (std::size_t i = 1; i < seq.values.size(); ++i)
        if (seq.values[i] <= seq.values[i - 1])
            throw NonIncreasing("sequence is not strictly increasing");
    seq.min_gap = N >= 2 ? min_gap_of(seq.values) : 0.0;
    return seq;
}

} // namespace pcorr
