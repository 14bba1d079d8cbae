#include "gmes/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gmes {

GroupDatum datum_from_json(const nlohmann::json& j) {
  if (!j.contains("p") || !j.contains("families"))
    throw std::invalid_argument("datum json needs fields 'p' and 'families'");
  int p = j.at("p").get<int>();
  std::vector<std::vector<std::vector<int>>> families =
      j.at("families").get<std::vector<std::vector<std::vector<int>>>>();
  return GroupDatum::validate(p, std::move(families));
}

nlohmann::json datum_to_json(const GroupDatum& d) {
  nlohmann::json fams = nlohmann::json::array();
  for (int j = 1; j <= d.p(); ++j) {
    nlohmann::json fam = nlohmann::json::array();
    for (int i = 1; i <= d.r(j); ++i) {
      nlohmann::json vec = nlohmann::json::array();
      for (uint8_t x : d.vec(j, i)) vec.push_back(static_cast<int>(x));
      fam.push_back(vec);
    }
    fams.push_back(fam);
  }
  return nlohmann::json{{"p", d.p()}, {"families", fams}};
}

GroupDatum load_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open datum file: " + path);
  nlohmann::json j;
  in >> j;
  return datum_from_json(j);
}

namespace {

void collect_labels(const Portrait& f, int level, size_t idx, std::string addr,
                    nlohmann::json& out) {
  if (level >= f.depth()) return;
  int lab = f.label_at(level, idx);
  if (lab != 0) out.push_back(nlohmann::json::array({addr, lab}));
  for (int x = 1; x <= f.p(); ++x)
    collect_labels(f, level + 1, idx * f.p() + (x - 1), addr + std::to_string(x), out);
}

}  // namespace

nlohmann::json portrait_to_json(const Portrait& f) {
  nlohmann::json labels = nlohmann::json::array();
  collect_labels(f, 0, 0, "", labels);
  return nlohmann::json{{"p", f.p()}, {"depth", f.depth()}, {"labels", labels}};
}

nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& chk : c.checks)
    checks.push_back(nlohmann::json{{"description", chk.description},
                                    {"witnesses", chk.witnesses},
                                    {"depth", chk.depth},
                                    {"pass", chk.pass}});
  return nlohmann::json{{"kind", c.kind}, {"checks", checks}, {"overall", c.overall}};
}

std::string datum_fingerprint(const GroupDatum& d) {
  const std::string s = d.canonical_string();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace gmes
