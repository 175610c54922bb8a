#pragma once

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "cmcrigid/alignment.hpp"
#include "cmcrigid/certify.hpp"

namespace cmcr {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "cmcrigid 0.1.0";

using nlohmann::json;

inline json to_json(const LoopSpec& loop)
{
    json j;
    j["ccw"] = loop.ccw;
    if (loop.kind == LoopSpec::Kind::Circle) {
        j["kind"] = "circle";
        j["center"] = {loop.center.real(), loop.center.imag()};
        j["radius"] = loop.radius;
    } else {
        j["kind"] = "polyline";
        json verts = json::array();
        for (Complex v : loop.vertices)
            verts.push_back({v.real(), v.imag()});
        j["vertices"] = verts;
    }
    return j;
}

inline LoopSpec loop_from_json(const json& j)
{
    if (j.at("kind") == "circle")
        return LoopSpec::circle(Complex(j.at("center")[0], j.at("center")[1]),
                                j.at("radius"), j.at("ccw"));
    std::vector<Complex> verts;
    for (const auto& v : j.at("vertices"))
        verts.emplace_back(v[0], v[1]);
    return LoopSpec::polyline(std::move(verts), j.at("ccw"));
}

inline json to_json(const RigidityReport& rep)
{
    json j;
    j["subject"] = rep.subject;
    j["verdict"] = to_string(rep.verdict);
    j["tolerance"] = rep.tolerance;
    j["diagnostic"] = rep.diagnostic;
    if (rep.flux_witness) {
        j["flux_witness"]["loop"] = to_json(rep.flux_witness->loop);
        j["flux_witness"]["flux"] = {rep.flux_witness->flux.v[0], rep.flux_witness->flux.v[1],
                                     rep.flux_witness->flux.v[2]};
        j["flux_witness"]["real_period"] = {rep.flux_witness->flux.real_part[0],
                                            rep.flux_witness->flux.real_part[1],
                                            rep.flux_witness->flux.real_part[2]};
        j["flux_witness"]["quadrature_error"] = rep.flux_witness->flux.quadrature_error;
    }
    if (rep.gap_sweep) {
        json table = json::array();
        for (const auto& [theta, gap] : rep.gap_sweep->table)
            table.push_back({theta, gap});
        j["gap_sweep"]["table"] = table;
        j["gap_sweep"]["min_gap"] = rep.gap_sweep->min_gap;
        j["gap_sweep"]["argmin_theta"] = rep.gap_sweep->argmin_theta;
    }
    return j;
}

inline RigidityReport rigidity_report_from_json(const json& j)
{
    RigidityReport rep;
    rep.subject = j.at("subject");
    const std::string v = j.at("verdict");
    rep.verdict = v == "Rigid" ? Verdict::Rigid
                : v == "NonRigid" ? Verdict::NonRigid
                : Verdict::Inconclusive;
    rep.tolerance = j.at("tolerance");
    rep.diagnostic = j.at("diagnostic");
    if (j.contains("flux_witness")) {
        const json& w = j.at("flux_witness");
        FluxWitness fw{loop_from_json(w.at("loop")), {}};
        for (int i = 0; i < 3; ++i) {
            fw.flux.v[i] = w.at("flux")[i];
            fw.flux.real_part[i] = w.at("real_period")[i];
        }
        fw.flux.quadrature_error = w.at("quadrature_error");
        rep.flux_witness = fw;
    }
    if (j.contains("gap_sweep")) {
        GapSweep sweep;
        for (const auto& row : j.at("gap_sweep").at("table"))
            sweep.table.emplace_back(row[0], row[1]);
        sweep.min_gap = j.at("gap_sweep").at("min_gap");
        sweep.argmin_theta = j.at("gap_sweep").at("argmin_theta");
        rep.gap_sweep = sweep;
    }
    return rep;
}

inline json to_json(const CongruenceResult& res)
{
    json j;
    json rot = json::array();
    for (int r = 0; r < 3; ++r)
        rot.push_back({res.rotation(r, 0), res.rotation(r, 1), res.rotation(r, 2)});
    j["rotation"] = rot;
    j["translation"] = {res.translation[0], res.translation[1], res.translation[2]};
    j["reflection"] = res.reflection;
    j["rms_residual"] = res.rms_residual;
    if (res.recovered_theta)
        j["recovered_theta"] = *res.recovered_theta;
    return j;
}

inline CongruenceResult congruence_result_from_json(const json& j)
{
    CongruenceResult res;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            res.rotation(r, c) = j.at("rotation")[r][c];
    for (int i = 0; i < 3; ++i)
        res.translation[i] = j.at("translation")[i];
    res.reflection = j.at("reflection");
    res.rms_residual = j.at("rms_residual");
    if (j.contains("recovered_theta"))
        res.recovered_theta = j.at("recovered_theta").get<double>();
    return res;
}

// Versioned container persisted by the CLI. The timestamp lives in a
// header field outside the data section; data sections are deterministic.
struct ReportDocument {
    int schema_version = kReportSchemaVersion;
    std::string tool = kToolVersion;
    std::string timestamp;
    json inputs;   // echo of the invocation parameters
    json report;   // a serialized RigidityReport or CongruenceResult
};

inline json to_json(const ReportDocument& doc)
{
    json j;
    j["schema_version"] = doc.schema_version;
    j["tool"] = doc.tool;
    j["timestamp"] = doc.timestamp;
    j["inputs"] = doc.inputs;
    j["report"] = doc.report;
    return j;
}

inline ReportDocument report_document_from_json(const json& j)
{
    ReportDocument doc;
    doc.schema_version = j.at("schema_version");
    doc.tool = j.at("tool");
    doc.timestamp = j.at("timestamp");
    doc.inputs = j.at("inputs");
    doc.report = j.at("report");
    return doc;
}

// Atomic write: temp file in the target directory, then rename.
inline void write_report_atomic(const std::string& path, const ReportDocument& doc)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os)
            throw std::runtime_error("cannot open output file: " + tmp);
        os << to_json(doc).dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename report into place: " + path);
}

} // namespace cmcr
