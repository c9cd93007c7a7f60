#ifndef SPINPOLY_JSON_IO_HPP
#define SPINPOLY_JSON_IO_HPP

#include <json.hpp>

#include "spinpoly/gorenstein.hpp"
#include "spinpoly/hilbert.hpp"

namespace spinpoly {

// Insertion-ordered JSON keeps emitted documents byte-stable.
using Json = nlohmann::ordered_json;

Json graph_to_json(const TrivalentGraph& graph);
TrivalentGraph graph_from_json(const Json& j);

Json spec_to_json(const PolytopeSpec& spec);
PolytopeSpec spec_from_json(const Json& j);

Json point_to_json(const GradedPoint& p);
GradedPoint point_from_json(const Json& j);

Json certificate_to_json(const GorensteinCertificate& cert);
GorensteinCertificate certificate_from_json(const Json& j);

// Full Hilbert report; counts are decimal strings.
Json hilbert_to_json(const PolytopeSpec& spec, const HilbertData& data,
                     const std::optional<StanleyResult>& stanley);

} // namespace spinpoly

#endif
