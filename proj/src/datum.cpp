#include "gmes/datum.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gmes/fp.hpp"

namespace gmes {

namespace {

// Rank of the row span over F_p; rows are modified in place.
int fp_rank(std::vector<std::vector<uint8_t>> rows, int p) {
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    int inv = inv_mod_p(rows[rank][c], p);
    for (size_t cc = c; cc < cols; ++cc)
      rows[rank][cc] = static_cast<uint8_t>(rows[rank][cc] * inv % p);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c] == 0) continue;
      int f = rows[r][c];
      for (size_t cc = c; cc < cols; ++cc)
        rows[r][cc] = static_cast<uint8_t>(mod_p(rows[r][cc] - f * rows[rank][cc], p));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

GroupDatum GroupDatum::validate(int p, std::vector<std::vector<std::vector<int>>> families) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (static_cast<int>(families.size()) != p)
    throw std::invalid_argument("expected exactly p families");

  GroupDatum d;
  d.p_ = p;
  d.fam_.resize(p);
  bool any = false;
  for (int j = 0; j < p; ++j) {
    const auto& fam = families[j];
    if (static_cast<int>(fam.size()) > p - 1)
      throw std::invalid_argument("family " + std::to_string(j + 1) + " has more than p-1 vectors");
    for (const auto& v : fam) {
      if (static_cast<int>(v.size()) != p - 1)
        throw std::invalid_argument("defining vectors must have length p-1");
      std::vector<uint8_t> w(p - 1);
      for (int c = 0; c < p - 1; ++c) w[c] = static_cast<uint8_t>(mod_p(v[c], p));
      d.fam_[j].push_back(std::move(w));
    }
    if (!fam.empty()) {
      any = true;
      if (fp_rank(d.fam_[j], p) != static_cast<int>(fam.size()))
        throw std::invalid_argument("family " + std::to_string(j + 1) +
                                    " has linearly dependent defining vectors");
    }
  }
  if (!any) throw std::invalid_argument("at least one family must be nonempty");
  return d;
}

int GroupDatum::designated_family() const {
  for (int j = 1; j <= p_; ++j)
    if (r(j) > 0) return j;
  return 0;
}

int GroupDatum::second_family() const {
  bool seen = false;
  for (int j = 1; j <= p_; ++j) {
    if (r(j) == 0) continue;
    if (seen) return j;
    seen = true;
  }
  return 0;
}

std::vector<Gen> GroupDatum::generators() const {
  std::vector<Gen> out{kGenA};
  for (int j = 1; j <= p_; ++j)
    for (int i = 1; i <= r(j); ++i) out.push_back(Gen{j, i});
  return out;
}

bool GroupDatum::has_generator(const Gen& g) const {
  if (g.is_a()) return true;
  return g.family >= 1 && g.family <= p_ && g.index >= 1 && g.index <= r(g.family);
}

std::string GroupDatum::canonical_string() const {
  std::ostringstream os;
  os << "p=" << p_;
  for (int j = 1; j <= p_; ++j) {
    os << ";f" << j << "=";
    for (int i = 1; i <= r(j); ++i) {
      os << (i > 1 ? "|" : "");
      const auto& v = vec(j, i);
      for (size_t c = 0; c < v.size(); ++c) os << (c ? "," : "") << int(v[c]);
    }
  }
  return os.str();
}

std::string GroupDatum::gen_name(const Gen& g) const {
  if (g.is_a()) return "a";
  return "b" + std::to_string(g.family) + "_" + std::to_string(g.index);
}

GroupDatum GroupDatum::with_families_swapped(int j1, int j2) const {
  GroupDatum d = *this;
  std::swap(d.fam_[j1 - 1], d.fam_[j2 - 1]);
  return d;
}

GroupDatum GroupDatum::with_family(int family, std::vector<std::vector<int>> vectors) const {
  std::vector<std::vector<std::vector<int>>> fams(p_);
  for (int j = 1; j <= p_; ++j) {
    if (j == family) {
      fams[j - 1] = vectors;
      continue;
    }
    for (int i = 1; i <= r(j); ++i)
      fams[j - 1].emplace_back(vec(j, i).begin(), vec(j, i).end());
  }
  return validate(p_, std::move(fams));
}

Classification classify(const GroupDatum& d) {
  const int p = d.p();
  Classification cl;
  cl.standard_form_valid = true;  // holds for every constructed datum

  cl.in_c_reg = true;
  cl.torsion_criterion = true;
  cl.condition_i_nonsymmetric = true;
  cl.contains_generalised_gs = false;
  cl.condition_ii_shared_vector = false;

  std::set<std::pair<int, std::vector<uint8_t>>> seen;  // (family, vector)
  for (int j = 1; j <= p; ++j) {
    if (d.r(j) == 0) continue;
    bool fam_nonconstant = false, fam_nonsymmetric = false;
    for (int i = 1; i <= d.r(j); ++i) {
      const auto& e = d.vec(j, i);
      bool constant = true, symmetric = true;
      int sum = 0;
      std::set<int> entries;
      for (int c = 0; c < p - 1; ++c) {
        sum += e[c];
        entries.insert(e[c]);
        if (e[c] != e[0]) constant = false;
        if (e[c] != e[p - 2 - c]) symmetric = false;
      }
      if (!constant) fam_nonconstant = true;
      if (!symmetric) fam_nonsymmetric = true;
      if (mod_p(sum, p) != 0) cl.torsion_criterion = false;
      if (static_cast<int>(entries.size()) == p - 1 && entries.count(0) == 0)
        cl.contains_generalised_gs = true;
      for (const auto& [jj, ee] : seen)
        if (jj != j && ee == e) cl.condition_ii_shared_vector = true;
      seen.insert({j, e});
    }
    if (!fam_nonconstant) cl.in_c_reg = false;
    if (!fam_nonsymmetric) cl.condition_i_nonsymmetric = false;
  }

  const int dj = d.designated_family();
  const auto& e1 = d.vec(dj, 1);
  cl.n = 0;
  for (int c = p - 2; c >= 0; --c)
    if (e1[c] != 0) {
      cl.n = c + 1;
      break;
    }
  return cl;
}

GroupDatum normalize_first_generator(const GroupDatum& d, int family) {
  const int p = d.p();
  int j = family == 0 ? d.designated_family() : family;
  if (j < 1 || j > p || d.r(j) == 0)
    throw std::invalid_argument("normalize_first_generator: family is empty");

  std::vector<std::vector<int>> vectors;
  for (int i = 1; i <= d.r(j); ++i)
    vectors.emplace_back(d.vec(j, i).begin(), d.vec(j, i).end());

  int pick = -1;
  for (size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i][0] != 0) {
      pick = static_cast<int>(i);
      break;
    }
  if (pick < 0)
    throw std::invalid_argument(
        "normalize_first_generator: every vector in the family has first entry 0");
  std::swap(vectors[0], vectors[pick]);
  int inv = inv_mod_p(vectors[0][0], p);
  for (auto& x : vectors[0]) x = mod_p(static_cast<long long>(x) * inv, p);
  return d.with_family(j, std::move(vectors));
}

}  // namespace gmes
