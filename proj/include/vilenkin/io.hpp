#pragma once

// Serialization for signals, spectra and result tables.  Signals travel as
// JSON ({"kind", "m", "values": [[re, im], ...]}), tabular results as CSV
// with doubles printed through %.12g so identical runs produce identical
// bytes on any platform.

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vilenkin/group.hpp"
#include "vilenkin/signal.hpp"

namespace vilenkin {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Minimal CSV emitter: quoting is unnecessary because every schema in this
/// project is numeric or uses bare identifiers.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    static std::string col(double v) { return format_double(v); }
    static std::string col(index_t v) { return std::to_string(v); }
    static std::string col(int v) { return std::to_string(v); }
    static std::string col(std::string v) { return v; }

private:
    std::ofstream out_;
};

namespace detail {

inline ordered_json complex_array(std::span<const cplx> vs) {
    ordered_json arr = ordered_json::array();
    for (const cplx& v : vs) arr.push_back({v.real(), v.imag()});
    return arr;
}

inline std::vector<cplx> complex_vector(const ordered_json& arr) {
    if (!arr.is_array()) throw std::runtime_error("expected an array of [re, im] pairs");
    std::vector<cplx> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2)
            throw std::runtime_error("expected [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

inline ordered_json radix_array(const GroupSpec& spec) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k < spec.levels(); ++k) arr.push_back(spec.radix(k));
    return arr;
}

inline GroupSpec spec_from_json(const ordered_json& j) {
    if (!j.contains("m")) throw std::runtime_error("missing radix sequence \"m\"");
    std::vector<int> m;
    for (const auto& e : j.at("m")) m.push_back(e.get<int>());
    return GroupSpec(m);
}

inline ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    ordered_json j;
    in >> j;
    return j;
}

inline void dump_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace detail

inline void write_signal(const std::string& path, const Signal& f) {
    ordered_json j;
    j["kind"] = "signal";
    j["m"] = detail::radix_array(f.spec);
    j["values"] = detail::complex_array(f.values);
    detail::dump_json(path, j);
}

inline Signal read_signal(const std::string& path) {
    const ordered_json j = detail::load_json(path);
    if (j.value("kind", "signal") != std::string("signal"))
        throw std::runtime_error(path + ": not a signal file");
    GroupSpec spec = detail::spec_from_json(j);
    std::vector<cplx> values = detail::complex_vector(j.at("values"));
    return Signal(std::move(spec), std::move(values));
}

inline void write_spectrum(const std::string& path, const Spectrum& fh) {
    ordered_json j;
    j["kind"] = "spectrum";
    j["m"] = detail::radix_array(fh.spec);
    j["coeffs"] = detail::complex_array(fh.coeffs);
    detail::dump_json(path, j);
}

inline Spectrum read_spectrum(const std::string& path) {
    const ordered_json j = detail::load_json(path);
    if (j.value("kind", "") != std::string("spectrum"))
        throw std::runtime_error(path + ": not a spectrum file");
    GroupSpec spec = detail::spec_from_json(j);
    std::vector<cplx> coeffs = detail::complex_vector(j.at("coeffs"));
    return Spectrum(std::move(spec), std::move(coeffs));
}

}  // namespace vilenkin
