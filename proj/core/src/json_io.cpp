#include "spinpoly/json_io.hpp"

namespace spinpoly {

namespace {

Json weights_to_json(const EdgeWeights& w) {
    Json arr = Json::array();
    for (std::int64_t x : w.w)
        arr.push_back(x);
    return arr;
}

EdgeWeights weights_from_json(const Json& j) {
    EdgeWeights w;
    for (const auto& x : j)
        w.w.push_back(x.get<std::int64_t>());
    return w;
}

} // namespace

Json graph_to_json(const TrivalentGraph& graph) {
    Json j;
    j["vertices"] = graph.vertex_count();
    Json slots = Json::array();
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        const auto& s = graph.slots(v);
        slots.push_back(Json::array({s[0], s[1], s[2]}));
    }
    j["slots"] = std::move(slots);
    Json edges = Json::array();
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        Json je;
        je["id"] = e;
        je["kind"] = graph.edge_kind(e) == EdgeKind::Leaf ? "leaf" : "internal";
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    j["leaf_order"] = graph.leaf_order();
    if (graph.family()) {
        const auto& f = *graph.family();
        Json jf;
        jf["g"] = f.g;
        jf["n"] = f.n;
        jf["separating_end"] = f.separating_end;
        jf["handle_x"] = f.handle_x;
        jf["handle_y"] = f.handle_y;
        jf["end_loop"] = f.end_loop;
        j["family"] = std::move(jf);
    } else {
        j["family"] = nullptr;
    }
    return j;
}

TrivalentGraph graph_from_json(const Json& j) {
    std::vector<std::array<EdgeId, 3>> slots;
    for (const auto& s : j.at("slots"))
        slots.push_back({s.at(0).get<EdgeId>(), s.at(1).get<EdgeId>(), s.at(2).get<EdgeId>()});
    std::vector<EdgeKind> kinds;
    for (const auto& e : j.at("edges"))
        kinds.push_back(e.at("kind").get<std::string>() == "leaf" ? EdgeKind::Leaf
                                                                  : EdgeKind::Internal);
    std::vector<EdgeId> leaf_order;
    for (const auto& e : j.at("leaf_order"))
        leaf_order.push_back(e.get<EdgeId>());
    std::optional<CaterpillarInfo> family;
    if (j.contains("family") && !j.at("family").is_null()) {
        const auto& f = j.at("family");
        CaterpillarInfo info;
        info.g = f.at("g").get<int>();
        info.n = f.at("n").get<int>();
        info.separating_end = f.at("separating_end").get<EdgeId>();
        info.handle_x = f.at("handle_x").get<EdgeId>();
        info.handle_y = f.at("handle_y").get<EdgeId>();
        info.end_loop = f.at("end_loop").get<EdgeId>();
        family = info;
    }
    return TrivalentGraph::from_parts(std::move(slots), std::move(kinds), std::move(leaf_order),
                                      std::move(family));
}

Json spec_to_json(const PolytopeSpec& spec) {
    Json j;
    j["graph"] = graph_to_json(spec.graph());
    j["level"] = spec.level();
    if (spec.has_fixing())
        j["leaf_fixing"] = *spec.leaf_fixing();
    else
        j["leaf_fixing"] = nullptr;
    return j;
}

PolytopeSpec spec_from_json(const Json& j) {
    TrivalentGraph graph = graph_from_json(j.at("graph"));
    std::optional<std::vector<std::int64_t>> fixing;
    if (j.contains("leaf_fixing") && !j.at("leaf_fixing").is_null())
        fixing = j.at("leaf_fixing").get<std::vector<std::int64_t>>();
    return PolytopeSpec(std::move(graph), j.at("level").get<std::int64_t>(), std::move(fixing));
}

Json point_to_json(const GradedPoint& p) {
    Json j;
    j["degree"] = p.degree;
    j["weights"] = weights_to_json(p.weights);
    return j;
}

GradedPoint point_from_json(const Json& j) {
    return GradedPoint{j.at("degree").get<std::int64_t>(), weights_from_json(j.at("weights"))};
}

Json certificate_to_json(const GorensteinCertificate& cert) {
    Json j;
    j["verdict"] = verdict_name(cert.verdict);
    j["method"] = method_name(cert.method);
    j["generator"] = cert.generator ? point_to_json(*cert.generator) : Json(nullptr);
    j["a_invariant"] = cert.a_invariant ? Json(*cert.a_invariant) : Json(nullptr);
    if (cert.witness) {
        Json w;
        if (const auto* two = std::get_if<TwoInteriorPoints>(&*cert.witness)) {
            w["kind"] = "two_interior_points";
            w["degree"] = two->degree;
            w["points"] = Json::array({weights_to_json(two->a), weights_to_json(two->b)});
        } else {
            const auto& fd = std::get<FailedDecomposition>(*cert.witness);
            w["kind"] = "failed_decomposition";
            w["point"] = point_to_json(fd.v);
            w["generator"] = point_to_json(fd.generator);
        }
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["checked_bound"] = cert.checked_bound;
    j["crosschecked"] = cert.crosschecked;
    j["note"] = cert.note;
    j["spec"] = cert.spec ? spec_to_json(*cert.spec) : Json(nullptr);
    return j;
}

GorensteinCertificate certificate_from_json(const Json& j) {
    GorensteinCertificate cert;
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "Gorenstein")
        cert.verdict = Verdict::Gorenstein;
    else if (verdict == "NotGorenstein")
        cert.verdict = Verdict::NotGorenstein;
    else
        cert.verdict = Verdict::InconclusiveUpToBound;
    const std::string method = j.at("method").get<std::string>();
    if (method == "semigroup")
        cert.method = Method::Semigroup;
    else if (method == "omega_structure")
        cert.method = Method::OmegaStructure;
    else
        cert.method = Method::TheoremFastpath;
    if (!j.at("generator").is_null())
        cert.generator = point_from_json(j.at("generator"));
    if (!j.at("a_invariant").is_null())
        cert.a_invariant = j.at("a_invariant").get<std::int64_t>();
    if (!j.at("witness").is_null()) {
        const auto& w = j.at("witness");
        if (w.at("kind").get<std::string>() == "two_interior_points") {
            TwoInteriorPoints two;
            two.degree = w.at("degree").get<std::int64_t>();
            two.a = weights_from_json(w.at("points").at(0));
            two.b = weights_from_json(w.at("points").at(1));
            cert.witness = std::move(two);
        } else {
            FailedDecomposition fd;
            fd.v = point_from_json(w.at("point"));
            fd.generator = point_from_json(w.at("generator"));
            cert.witness = std::move(fd);
        }
    }
    cert.checked_bound = j.at("checked_bound").get<std::int64_t>();
    cert.crosschecked = j.at("crosschecked").get<bool>();
    cert.note = j.at("note").get<std::string>();
    if (!j.at("spec").is_null())
        cert.spec = spec_from_json(j.at("spec"));
    return cert;
}

Json hilbert_to_json(const PolytopeSpec& spec, const HilbertData& data,
                     const std::optional<StanleyResult>& stanley) {
    Json j;
    j["spec"] = spec_to_json(spec);
    Json values = Json::array();
    for (const auto& v : data.values)
        values.push_back(v.str());
    j["values"] = std::move(values);
    j["ring_dim"] = data.ring_dim;
    j["period"] = data.denominator_period;
    if (data.hstar) {
        Json h = Json::array();
        for (const auto& v : *data.hstar)
            h.push_back(v.str());
        j["hstar"] = std::move(h);
    } else {
        j["hstar"] = nullptr;
    }
    if (stanley) {
        j["symmetric"] = stanley->symmetric;
        j["a_invariant"] = stanley->a_invariant ? Json(*stanley->a_invariant) : Json(nullptr);
    } else {
        j["symmetric"] = nullptr;
        j["a_invariant"] = nullptr;
    }
    return j;
}

} // namespace spinpoly
