#include "config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

using json = nlohmann::json;
using namespace mdiqkd;

namespace cli {

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a)
                ok = true;
        if (!ok)
            throw ConfigError("unknown field: " + where + it.key());
    }
}

double require_number(const json& obj, const std::string& where,
                      const char* key)
{
    if (!obj.contains(key))
        throw ConfigError("missing field: " + where + key);
    if (!obj[key].is_number())
        throw ConfigError("field is not a number: " + where + key);
    return obj[key].get<double>();
}

RangeSpec parse_range(const json& obj, const std::string& where)
{
    if (!obj.is_object())
        throw ConfigError("range is not an object: " + where);
    reject_unknown(obj, where + ".", {"from", "to", "step"});
    RangeSpec r;
    r.from = require_number(obj, where + ".", "from");
    r.to = require_number(obj, where + ".", "to");
    r.step = require_number(obj, where + ".", "step");
    if (r.step <= 0)
        throw ConfigError("step must be positive: " + where + ".step");
    if (r.to < r.from)
        throw ConfigError("empty range: " + where);
    return r;
}

Variant parse_variant(const std::string& s, const std::string& where)
{
    if (s == "six_intensity")
        return Variant::six_intensity;
    if (s == "seven_intensity")
        return Variant::seven_intensity;
    if (s == "nine_intensity")
        return Variant::nine_intensity;
    throw ConfigError("unknown variant \"" + s + "\": " + where);
}

ArmStrategy parse_strategy(const std::string& s, const std::string& where)
{
    if (s == "free")
        return ArmStrategy::free_params;
    if (s == "symmetric_direct")
        return ArmStrategy::symmetric_direct;
    if (s == "symmetric_add_fibre")
        return ArmStrategy::symmetric_add_fibre;
    throw ConfigError("unknown strategy \"" + s + "\": " + where);
}

} // namespace

std::vector<double> RangeSpec::values() const
{
    std::vector<double> v;
    int n = (int)std::floor((to - from) / step + 1e-9) + 1;
    for (int i = 0; i < n; i++)
        v.push_back(from + i * step);
    return v;
}

Config parse_config_text(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") +
                          e.what());
    }
    if (!root.is_object())
        throw ConfigError("config root is not an object");
    reject_unknown(root, "", {"schema_version", "device", "protocol",
                              "analysis", "optimizer", "scenario"});
    if (!root.contains("schema_version"))
        throw ConfigError("missing field: schema_version");
    if (!root["schema_version"].is_number_integer() ||
        root["schema_version"].get<int>() != 1)
        throw ConfigError("unsupported schema_version (expected 1)");

    Config cfg;
    if (root.contains("device")) {
        const json& d = root["device"];
        reject_unknown(d, "device.",
                       {"Y0", "eta_d", "e_d", "f", "eps", "alpha"});
        if (d.contains("Y0")) cfg.dev.Y0 = require_number(d, "device.", "Y0");
        if (d.contains("eta_d"))
            cfg.dev.eta_d = require_number(d, "device.", "eta_d");
        if (d.contains("e_d"))
            cfg.dev.e_d = require_number(d, "device.", "e_d");
        if (d.contains("f")) cfg.dev.f = require_number(d, "device.", "f");
        if (d.contains("eps"))
            cfg.dev.eps = require_number(d, "device.", "eps");
        if (d.contains("alpha"))
            cfg.dev.alpha = require_number(d, "device.", "alpha");
        std::string why;
        if (!cfg.dev.valid(&why))
            throw ConfigError("invalid device parameters: " + why);
    }
    if (root.contains("protocol")) {
        const json& p = root["protocol"];
        reject_unknown(p, "protocol.", {"variant", "symmetric"});
        if (p.contains("variant"))
            cfg.variant = parse_variant(p["variant"].get<std::string>(),
                                        "protocol.variant");
        if (p.contains("symmetric"))
            cfg.symmetric = p["symmetric"].get<bool>();
    }
    if (root.contains("analysis")) {
        const json& a = root["analysis"];
        reject_unknown(a, "analysis.", {"mode", "N"});
        std::string mode =
            a.contains("mode") ? a["mode"].get<std::string>() : "asymptotic";
        if (mode == "finite") {
            cfg.finite = true;
            cfg.N = require_number(a, "analysis.", "N");
            if (cfg.N <= 0)
                throw ConfigError("analysis.N must be positive");
        } else if (mode != "asymptotic") {
            throw ConfigError("unknown analysis.mode \"" + mode + "\"");
        }
    }
    if (root.contains("optimizer")) {
        const json& o = root["optimizer"];
        reject_unknown(o, "optimizer.", {"starts"});
        if (o.contains("starts"))
            cfg.starts = (int)require_number(o, "optimizer.", "starts");
    }

    if (!root.contains("scenario"))
        throw ConfigError("missing field: scenario");
    const json& sc = root["scenario"];
    if (!sc.contains("type"))
        throw ConfigError("missing field: scenario.type");
    std::string type = sc["type"].get<std::string>();
    if (type == "point") {
        cfg.scenario = ScenarioType::point;
        reject_unknown(sc, "scenario.", {"type", "L_A", "L_B"});
        cfg.L_A = require_number(sc, "scenario.", "L_A");
        cfg.L_B = require_number(sc, "scenario.", "L_B");
    } else if (type == "sweep") {
        cfg.scenario = ScenarioType::sweep;
        reject_unknown(sc, "scenario.", {"type", "L_A", "L_B"});
        if (!sc.contains("L_A") || !sc.contains("L_B"))
            throw ConfigError("sweep needs scenario.L_A and scenario.L_B");
        cfg.range_A = parse_range(sc["L_A"], "scenario.L_A");
        cfg.range_B = parse_range(sc["L_B"], "scenario.L_B");
    } else if (type == "fixed_mismatch") {
        cfg.scenario = ScenarioType::fixed_mismatch;
        reject_unknown(sc, "scenario.", {"type", "x", "L_B"});
        cfg.mismatch_x = require_number(sc, "scenario.", "x");
        if (cfg.mismatch_x <= 0)
            throw ConfigError("scenario.x must be positive");
        if (!sc.contains("L_B"))
            throw ConfigError("fixed_mismatch needs scenario.L_B");
        cfg.range_B = parse_range(sc["L_B"], "scenario.L_B");
    } else if (type == "single_arm") {
        cfg.scenario = ScenarioType::single_arm;
        reject_unknown(sc, "scenario.",
                       {"type", "L_A", "strategy", "target_rate"});
        if (!sc.contains("L_A"))
            throw ConfigError("single_arm needs scenario.L_A");
        cfg.range_A = parse_range(sc["L_A"], "scenario.L_A");
        if (sc.contains("strategy"))
            cfg.strategy = parse_strategy(sc["strategy"].get<std::string>(),
                                          "scenario.strategy");
        if (sc.contains("target_rate")) {
            cfg.target_rate =
                require_number(sc, "scenario.", "target_rate");
            if (cfg.target_rate <= 0)
                throw ConfigError("scenario.target_rate must be positive");
        }
    } else if (type == "network") {
        cfg.scenario = ScenarioType::network;
        reject_unknown(sc, "scenario.", {"type", "node_file", "strategy"});
        if (!sc.contains("node_file"))
            throw ConfigError("network needs scenario.node_file");
        cfg.node_file = sc["node_file"].get<std::string>();
        if (sc.contains("strategy"))
            cfg.strategy = parse_strategy(sc["strategy"].get<std::string>(),
                                          "scenario.strategy");
    } else if (type == "compare") {
        cfg.scenario = ScenarioType::compare;
        reject_unknown(sc, "scenario.", {"type", "L_A", "L_B", "cases"});
        cfg.L_A = require_number(sc, "scenario.", "L_A");
        cfg.L_B = require_number(sc, "scenario.", "L_B");
        if (!sc.contains("cases") || !sc["cases"].is_array() ||
            sc["cases"].empty())
            throw ConfigError("compare needs a non-empty scenario.cases");
        int idx = 0;
        for (const json& c : sc["cases"]) {
            std::string where = "scenario.cases[" + std::to_string(idx) + "]";
            reject_unknown(c, where + ".", {"label", "variant", "symmetric"});
            CompareCase cc;
            if (!c.contains("variant"))
                throw ConfigError("missing field: " + where + ".variant");
            cc.variant = parse_variant(c["variant"].get<std::string>(),
                                       where + ".variant");
            cc.symmetric =
                c.contains("symmetric") && c["symmetric"].get<bool>();
            cc.label = c.contains("label")
                           ? c["label"].get<std::string>()
                           : variant_name(cc.variant) +
                                 (cc.symmetric ? "/symmetric" : "/free");
            cfg.cases.push_back(cc);
            idx++;
        }
    } else {
        throw ConfigError("unknown scenario.type \"" + type + "\"");
    }
    return cfg;
}

Config parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace cli
