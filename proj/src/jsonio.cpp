#include "ncfree/jsonio.hpp"

#include "ncfree/cumulants.hpp"
#include "ncfree/invariance.hpp"
#include "ncfree/models.hpp"

namespace ncfree {

using nlohmann::json;

nlohmann::json rat_mat_to_json(const RatMat& m, const std::vector<SetPartition>& order) {
  if ((int)order.size() != m.rows || m.rows != m.cols)
    throw std::invalid_argument("rat_mat_to_json: order/shape mismatch");
  json out = json::object();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::object();
    for (int j = 0; j < m.cols; ++j) row[order[j].to_string()] = rat_to_string(m.at(i, j));
    out[order[i].to_string()] = std::move(row);
  }
  return out;
}

RatMat json_to_rat_mat(const nlohmann::json& j, const std::vector<SetPartition>& order) {
  const int d = (int)order.size();
  RatMat m(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& row = j.at(order[i].to_string());
    for (int c = 0; c < d; ++c)
      m.at(i, c) = rat_from_string(row.at(order[c].to_string()).get<std::string>());
  }
  return m;
}

nlohmann::json int_mat_to_json(const IntMat& m, const std::vector<SetPartition>& order) {
  json out = json::object();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::object();
    for (int j = 0; j < m.cols; ++j) row[order[j].to_string()] = m.at(i, j).get_str();
    out[order[i].to_string()] = std::move(row);
  }
  return out;
}

namespace {

json belem_to_json(const BElem& b) {
  json rows = json::array();
  for (int i = 0; i < b.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < b.dim(); ++j) row.push_back(rat_to_string(b.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

BElem belem_from_json(const json& j, int d) {
  BElem b(d);
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < d; ++c)
      b.at(i, c) = rat_from_string(j.at(i).at(c).get<std::string>());
  return b;
}

// shared {d, s, K, involution, entries:[{word, insertions, value}]} shape
template <typename Spec, typename Setter>
Spec spec_from_json(const json& j, Setter set) {
  Spec spec(j.at("d").get<int>(), j.at("s").get<int>(), j.at("K").get<int>(),
            j.value("involution", std::vector<int>{}));
  for (const auto& e : j.at("entries")) {
    auto rw = e.at("word").get<std::vector<int>>();
    auto mw = e.at("insertions").get<std::vector<int>>();
    set(spec, rw, mw, belem_from_json(e.at("value"), spec.dim()));
  }
  return spec;
}

template <typename Spec>
json spec_to_json(const Spec& spec) {
  json out;
  out["d"] = spec.dim();
  out["s"] = spec.generators();
  out["K"] = spec.order();
  out["involution"] = spec.involution();
  json entries = json::array();
  const int d2 = spec.dim() * spec.dim();
  // deterministic order: sort the stored words
  std::vector<Word> words;
  for (const auto& [w, v] : spec.entries()) words.push_back(w);
  std::sort(words.begin(), words.end());
  for (const auto& w : words) {
    json e;
    std::vector<int> rw(w.size()), mw(w.size());
    for (size_t t = 0; t < w.size(); ++t) {
      rw[t] = (int)(w[t] / d2) + 1;
      mw[t] = (int)(w[t] % d2);
    }
    e["word"] = rw;
    e["insertions"] = mw;
    e["value"] = belem_to_json(spec.entries().at(w));
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

}  // namespace

nlohmann::json distribution_to_json(const DistributionSpec& spec) { return spec_to_json(spec); }

DistributionSpec distribution_from_json(const nlohmann::json& j) {
  return spec_from_json<DistributionSpec>(
      j, [](DistributionSpec& s, const std::vector<int>& rw, const std::vector<int>& mw,
            BElem v) { s.set_kappa(rw, mw, std::move(v)); });
}

nlohmann::json moments_to_json(const MomentSpec& spec) { return spec_to_json(spec); }

MomentSpec moments_from_json(const nlohmann::json& j) {
  return spec_from_json<MomentSpec>(
      j, [](MomentSpec& s, const std::vector<int>& rw, const std::vector<int>& mw, BElem v) {
        s.set_moment(rw, mw, std::move(v));
      });
}

nlohmann::json family_to_json(const MatrixFamilySpec& fam) {
  json out;
  out["n"] = fam.n;
  out["s"] = fam.s;
  out["involution"] = fam.involution;
  out["entry_dist"] = distribution_to_json(fam.entry_dist);
  return out;
}

MatrixFamilySpec family_from_json(const nlohmann::json& j) {
  DistributionSpec dist = distribution_from_json(j.at("entry_dist"));
  MatrixFamilySpec fam(j.at("n").get<int>(), j.at("s").get<int>(), dist.dim(), dist.order(),
                       j.value("involution", std::vector<int>{}));
  if (dist.generators() != fam.n * fam.n * fam.s)
    throw std::invalid_argument("family_from_json: generator count mismatch");
  for (const auto& [w, v] : dist.entries()) fam.entry_dist.set_kappa_word(w, v);
  return fam;
}

nlohmann::json moment_array_to_json(const MomentArray& m) {
  json out;
  out["s"] = m.s;
  out["n"] = m.n;
  out["k_max"] = m.k_max;
  out["compressed"] = m.compressed;
  json entries = json::array();
  if (m.compressed) {
    for (const auto& [key, value] : m.by_pattern) {
      json e;
      e["word"] = key.first;
      e["pattern"] = key.second.to_string();
      e["value"] = rat_to_string(value);
      entries.push_back(std::move(e));
    }
  } else {
    for (const auto& [key, value] : m.by_tuple) {
      json e;
      e["word"] = key.first;
      e["tuple"] = key.second;
      e["value"] = rat_to_string(value);
      entries.push_back(std::move(e));
    }
  }
  out["entries"] = std::move(entries);
  return out;
}

MomentArray moment_array_from_json(const nlohmann::json& j) {
  MomentArray m;
  m.s = j.at("s").get<int>();
  m.n = j.at("n").get<long>();
  m.k_max = j.at("k_max").get<int>();
  m.compressed = j.at("compressed").get<bool>();
  for (const auto& e : j.at("entries")) {
    auto word = e.at("word").get<std::vector<int>>();
    Rat value = rat_from_string(e.at("value").get<std::string>());
    if (m.compressed) {
      m.by_pattern[{word, SetPartition::parse(e.at("pattern").get<std::string>())}] = value;
    } else {
      m.by_tuple[{word, e.at("tuple").get<std::vector<int>>()}] = value;
    }
  }
  return m;
}

nlohmann::json certificate_to_json(const InvarianceCertificate& c) {
  json out;
  out["group"] = group_name(c.group);
  out["n"] = c.n;
  out["k_max"] = c.k_max;
  out["consistent"] = c.consistent;
  json blocks = json::array();
  for (const auto& b : c.blocks) {
    json jb;
    jb["k"] = b.k;
    jb["word"] = b.r_word;
    jb["consistent"] = b.consistent;
    if (b.consistent) {
      jb["dependent"] = b.dependent;
      json coeff = json::object();
      for (const auto& [pi, v] : b.coefficients) coeff[pi.to_string()] = rat_to_string(v);
      jb["coefficients"] = std::move(coeff);
    } else {
      jb["witness"] = b.witness;
    }
    blocks.push_back(std::move(jb));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

}  // namespace ncfree
