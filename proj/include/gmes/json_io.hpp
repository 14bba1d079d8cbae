#pragma once

#include <string>

#include <json.hpp>

#include "gmes/certify.hpp"
#include "gmes/datum.hpp"
#include "gmes/portrait.hpp"

namespace gmes {

// Datum file format: {"p": <int>, "families": [ [ [<int>,...], ... ] x p ]};
// vectors of length p-1, entries reduced mod p on load.
GroupDatum datum_from_json(const nlohmann::json& j);
nlohmann::json datum_to_json(const GroupDatum& d);
GroupDatum load_datum_file(const std::string& path);

// {p, depth, labels: [[address, label], ...]} with only nonzero labels listed.
nlohmann::json portrait_to_json(const Portrait& f);

nlohmann::json certificate_to_json(const Certificate& c);

// FNV-1a of the canonical datum string; stable across runs.
std::string datum_fingerprint(const GroupDatum& d);

}  // namespace gmes
