#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ufg/rational.hpp"

namespace ufg {

inline constexpr const char* kToolVersion = "0.1.0";

/// Run record. Keys keep insertion order so equal runs serialize to equal bytes.
/// Wall time is the only non-reproducible field and is written only when asked for.
class Manifest {
public:
    explicit Manifest(std::string subcommand) {
        doc_["tool"] = "ufg";
        doc_["version"] = kToolVersion;
        doc_["subcommand"] = std::move(subcommand);
        doc_["parameters"] = nlohmann::ordered_json::object();
        doc_["seeds"] = nlohmann::ordered_json::object();
        doc_["outputs"] = nlohmann::ordered_json::array();
    }

    template <typename T>
    Manifest& param(const std::string& key, const T& value) {
        doc_["parameters"][key] = value;
        return *this;
    }
    Manifest& param(const std::string& key, const Rational& value) { return param(key, to_string(value)); }

    Manifest& seed(const std::string& pass, std::uint64_t value) {
        doc_["seeds"][pass] = value;
        return *this;
    }

    Manifest& mode(const std::string& m) {
        doc_["mode"] = m;
        return *this;
    }

    Manifest& output(const std::string& path) {
        doc_["outputs"].push_back(path);
        return *this;
    }

    template <typename T>
    Manifest& set(const std::string& key, const T& value) {
        doc_[key] = value;
        return *this;
    }
    Manifest& set(const std::string& key, const Rational& value) { return set(key, to_string(value)); }

    nlohmann::ordered_json& json() { return doc_; }
    const nlohmann::ordered_json& json() const { return doc_; }

    void wall_time(double seconds) { doc_["wall_time_seconds"] = seconds; }

    std::string dump() const { return doc_.dump(2) + "\n"; }

private:
    nlohmann::ordered_json doc_;
};

inline std::string to_json_value(const std::optional<Rational>& r) { return r ? to_string(*r) : std::string("not measured"); }

}  // namespace ufg
