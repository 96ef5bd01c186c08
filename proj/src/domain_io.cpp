#include "billiards/domain_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "billiards/errors.hpp"

namespace billiards {

using nlohmann::json;

DomainSpec parse_domain_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("domain file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw DomainError("domain file must be an object with a \"kind\" field");
    DomainSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "circle") {
            spec.kind = DomainKind::circle;
            spec.radius = j.at("r").get<double>();
        } else if (kind == "ellipse") {
            spec.kind = DomainKind::ellipse;
            spec.semi_major = j.at("a").get<double>();
            spec.semi_minor = j.at("b").get<double>();
        } else if (kind == "support") {
            spec.kind = DomainKind::support;
            spec.support.c0 = j.at("c0").get<double>();
            if (j.contains("cos")) spec.support.cos_coeffs = j.at("cos").get<std::vector<double>>();
            if (j.contains("sin")) spec.support.sin_coeffs = j.at("sin").get<std::vector<double>>();
        } else {
            throw DomainError("unknown domain kind: " + kind);
        }
        if (j.contains("rotate")) spec.rotate = j.at("rotate").get<double>();
        if (j.contains("scale")) spec.scale = j.at("scale").get<double>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("domain file field error: ") + e.what());
    }
    return spec;
}

std::string domain_to_text(const DomainSpec& spec) {
    json j;
    switch (spec.kind) {
        case DomainKind::circle:
            j["kind"] = "circle";
            j["r"] = spec.radius;
            break;
        case DomainKind::ellipse:
            j["kind"] = "ellipse";
            j["a"] = spec.semi_major;
            j["b"] = spec.semi_minor;
            break;
        case DomainKind::support:
            j["kind"] = "support";
            j["c0"] = spec.support.c0;
            j["cos"] = spec.support.cos_coeffs;
            j["sin"] = spec.support.sin_coeffs;
            break;
    }
    if (spec.rotate != 0.0) j["rotate"] = spec.rotate;
    if (spec.scale != 1.0) j["scale"] = spec.scale;
    return j.dump(2) + "\n";
}

DomainSpec read_domain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open domain file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_domain_text(ss.str());
}

void write_domain_file(const std::string& path, const DomainSpec& spec) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write domain file: " + path);
    out << domain_to_text(spec);
}

}  // namespace billiards
