#include "linefig/skyculture.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "linefig/csv.hpp"
#include "linefig/errors.hpp"

namespace linefig {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

StarPair::StarPair(std::string first, std::string second) {
  if (second < first) std::swap(first, second);
  a = std::move(first);
  b = std::move(second);
}

std::vector<std::string> LineFigure::stars() const {
  std::vector<std::string> ids;
  ids.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    ids.push_back(e.a);
    ids.push_back(e.b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::string_view to_string(Transmission t) { return t == Transmission::Written ? "written" : "oral"; }

std::string_view to_string(Use u) {
  switch (u) {
    case Use::Navigation: return "navigation";
    case Use::Religious: return "religious";
    case Use::Political: return "political";
    case Use::Folk: return "folk";
    case Use::Uncategorized: return "uncategorized";
  }
  return "uncategorized";
}

std::string_view to_string(Ancestry a) {
  switch (a) {
    case Ancestry::IauGreek: return "iau-greek";
    case Ancestry::Mesopotamian: return "mesopotamian";
    case Ancestry::Indian: return "indian";
    case Ancestry::Chinese: return "chinese";
    case Ancestry::Austronesian: return "austronesian";
    case Ancestry::Polynesian: return "polynesian";
    case Ancestry::NorthAmerican: return "n-american";
    case Ancestry::SouthAmerican: return "s-american";
    case Ancestry::Sami: return "sami";
    case Ancestry::Egyptian: return "egyptian";
    case Ancestry::Uncategorized: return "uncategorized";
  }
  return "uncategorized";
}

Transmission parse_transmission(std::string_view token) {
  const auto t = lower(csv::trim(token));
  if (t == "w" || t == "written") return Transmission::Written;
  if (t == "o" || t == "oral") return Transmission::Oral;
  throw ValidationError("unknown transmission '" + std::string(token) + "'");
}

Use parse_use(std::string_view token) {
  const auto t = lower(csv::trim(token));
  if (t == "nv" || t == "navigation") return Use::Navigation;
  if (t == "re" || t == "religious") return Use::Religious;
  if (t == "po" || t == "political") return Use::Political;
  if (t == "fo" || t == "folk") return Use::Folk;
  if (t == "un" || t == "uncategorized" || t == "uncategorised") return Use::Uncategorized;
  throw ValidationError("unknown use '" + std::string(token) + "'");
}

Ancestry parse_ancestry(std::string_view token) {
  const auto t = csv::trim(token);
  // Short table codes are case-sensitive ("sA" is S-American, not Sami).
  if (t == "G" || t == "I") return Ancestry::IauGreek;
  if (t == "M") return Ancestry::Mesopotamian;
  if (t == "In") return Ancestry::Indian;
  if (t == "C") return Ancestry::Chinese;
  if (t == "A") return Ancestry::Austronesian;
  if (t == "P") return Ancestry::Polynesian;
  if (t == "nA") return Ancestry::NorthAmerican;
  if (t == "sA") return Ancestry::SouthAmerican;
  if (t == "-" || t == "U") return Ancestry::Uncategorized;
  const auto l = lower(t);
  for (auto a : {Ancestry::IauGreek, Ancestry::Mesopotamian, Ancestry::Indian, Ancestry::Chinese,
                 Ancestry::Austronesian, Ancestry::Polynesian, Ancestry::NorthAmerican, Ancestry::SouthAmerican,
                 Ancestry::Sami, Ancestry::Egyptian, Ancestry::Uncategorized}) {
    if (l == to_string(a)) return a;
  }
  if (l == "iau" || l == "greek") return Ancestry::IauGreek;
  throw ValidationError("unknown ancestry '" + std::string(token) + "'");
}

std::vector<LineFigure> parse_skyculture(std::istream& in, const std::string& culture_id, Diagnostics* diagnostics,
                                         std::string_view source) {
  csv::LineReader reader(in);
  std::string line;
  std::vector<LineFigure> figures;
  std::set<std::string> seen;
  const auto where = [&] { return std::string(source) + ":" + std::to_string(reader.line_number()) + ": "; };

  while (reader.next(line)) {
    std::istringstream tokens(line);
    std::string figure_id;
    std::string count_token;
    tokens >> figure_id >> count_token;
    if (count_token.empty()) throw ValidationError(where() + "missing line count");
    long long n_lines = 0;
    try {
      n_lines = csv::parse_int(count_token, "line count");
    } catch (const ValidationError& e) {
      throw ValidationError(where() + e.what());
    }
    std::vector<std::string> ids;
    for (std::string id; tokens >> id;) ids.push_back(id);

    if (n_lines <= 0 || ids.empty()) throw ValidationError(where() + "figure " + figure_id + " has zero lines");
    if (ids.size() % 2 != 0) throw ValidationError(where() + "odd number of star ids in figure " + figure_id);
    if (static_cast<long long>(ids.size() / 2) != n_lines) {
      throw ValidationError(where() + "figure " + figure_id + " declares " + std::to_string(n_lines) +
                            " lines but lists " + std::to_string(ids.size() / 2));
    }
    if (!seen.insert(figure_id).second) throw ValidationError(where() + "duplicate figure id " + figure_id);

    LineFigure figure{culture_id, figure_id, std::nullopt, {}};
    for (std::size_t i = 0; i < ids.size(); i += 2) {
      if (ids[i] == ids[i + 1]) throw ValidationError(where() + "self-loop on star " + ids[i] + " in " + figure_id);
      figure.edges.emplace_back(ids[i], ids[i + 1]);
    }
    const auto before = figure.edges.size();
    std::sort(figure.edges.begin(), figure.edges.end());
    figure.edges.erase(std::unique(figure.edges.begin(), figure.edges.end()), figure.edges.end());
    if (figure.edges.size() != before && diagnostics != nullptr) {
      diagnostics->warnings.push_back(where() + "figure " + figure_id + ": " +
                                      std::to_string(before - figure.edges.size()) + " duplicate line(s) collapsed");
    }
    figures.push_back(std::move(figure));
  }
  return figures;
}

void write_skyculture(std::ostream& out, std::span<const LineFigure> figures) {
  for (const auto& f : figures) {
    out << f.figure_id << ' ' << f.edges.size();
    for (const auto& e : f.edges) out << ' ' << e.a << ' ' << e.b;
    out << '\n';
  }
}

std::vector<CultureRecord> parse_culture_metadata(std::istream& in, std::string_view source) {
  csv::LineReader reader(in);
  std::string line;
  std::vector<CultureRecord> records;
  std::set<std::string> seen;
  bool first = true;
  while (reader.next(line)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.line_number()) + ": ";
    const auto fields = csv::split(line);
    if (first && !fields.empty() && fields[0] == "culture_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 4 || fields.size() > 5) throw ValidationError(where + "expected 4 or 5 fields");
    try {
      CultureRecord rec;
      rec.culture_id = fields[0];
      if (rec.culture_id.empty()) throw ValidationError("empty culture id");
      rec.transmission = parse_transmission(fields[1]);
      if (fields[2].empty()) throw ValidationError("empty uses; write 'uncategorized' explicitly");
      for (const auto& tok : csv::split(fields[2], ';')) rec.uses.push_back(parse_use(tok));
      std::sort(rec.uses.begin(), rec.uses.end());
      rec.uses.erase(std::unique(rec.uses.begin(), rec.uses.end()), rec.uses.end());
      if (rec.uses.size() > 1 && rec.uses.back() == Use::Uncategorized) {
        throw ValidationError("'uncategorized' cannot be combined with other uses");
      }
      rec.ancestry = parse_ancestry(fields[3]);
      if (fields.size() == 5) rec.timestamp_note = fields[4];
      if (!seen.insert(rec.culture_id).second) throw ValidationError("duplicate culture id " + rec.culture_id);
      records.push_back(std::move(rec));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return records;
}

void write_culture_metadata(std::ostream& out, std::span<const CultureRecord> cultures) {
  out << "culture_id,transmission,uses,ancestry,timestamp_note\n";
  for (const auto& c : cultures) {
    out << c.culture_id << ',' << to_string(c.transmission) << ',';
    for (std::size_t i = 0; i < c.uses.size(); ++i) out << (i ? ";" : "") << to_string(c.uses[i]);
    out << ',' << to_string(c.ancestry) << ',' << c.timestamp_note << '\n';
  }
}

std::map<std::string, Use> parse_use_overrides(std::istream& in, std::string_view source) {
  csv::LineReader reader(in);
  std::string line;
  std::map<std::string, Use> overrides;
  bool first = true;
  while (reader.next(line)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.line_number()) + ": ";
    const auto fields = csv::split(line);
    if (first && !fields.empty() && fields[0] == "figure_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 2) throw ValidationError(where + "expected figure_id,use");
    try {
      if (!overrides.emplace(fields[0], parse_use(fields[1])).second) {
        throw ValidationError("duplicate override for " + fields[0]);
      }
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return overrides;
}

const CultureRecord& Dataset::culture(std::string_view culture_id) const {
  for (const auto& c : cultures) {
    if (c.culture_id == culture_id) return c;
  }
  throw ValidationError("unknown culture " + std::string(culture_id));
}

std::string Dataset::resolve_figure_key(std::string_view token) const {
  if (token.find('/') != std::string_view::npos) {
    for (const auto& f : figures) {
      if (f.key() == token) return f.key();
    }
    throw ValidationError("unknown figure " + std::string(token));
  }
  const LineFigure* match = nullptr;
  for (const auto& f : figures) {
    if (f.figure_id != token) continue;
    if (match != nullptr) {
      throw ValidationError("ambiguous figure id " + std::string(token) + "; use culture/figure");
    }
    match = &f;
  }
  if (match == nullptr) throw ValidationError("unknown figure " + std::string(token));
  return match->key();
}

void Dataset::validate() {
  std::set<std::string> culture_ids;
  for (const auto& c : cultures) {
    if (!culture_ids.insert(c.culture_id).second) throw ValidationError("duplicate culture id " + c.culture_id);
  }
  std::set<std::string> keys;
  for (const auto& f : figures) {
    if (!culture_ids.contains(f.culture_id)) {
      throw ValidationError("figure " + f.key() + " references unknown culture " + f.culture_id);
    }
    if (!keys.insert(f.key()).second) throw ValidationError("duplicate figure " + f.key());
    if (f.edges.empty()) throw ValidationError("figure " + f.key() + " has no lines");
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
      const auto& e = f.edges[i];
      if (e.a == e.b) throw ValidationError("self-loop in figure " + f.key());
      if (i > 0 && !(f.edges[i - 1] < e)) throw ValidationError("unsorted or duplicate edge in figure " + f.key());
      for (const auto* id : {&e.a, &e.b}) {
        if (!catalog.contains(*id)) throw ValidationError("figure " + f.key() + ": unresolvable star id " + *id);
      }
    }
  }
  std::map<std::string, Use> resolved;
  for (const auto& [token, use] : use_overrides) {
    const auto key = resolve_figure_key(token);
    if (!resolved.emplace(key, use).second) throw ValidationError("duplicate override for " + key);
  }
  use_overrides = std::move(resolved);
}

Use Dataset::figure_use(const LineFigure& figure) const {
  if (const auto it = use_overrides.find(figure.key()); it != use_overrides.end()) return it->second;
  const auto& c = culture(figure.culture_id);
  return c.uses.size() == 1 ? c.uses.front() : Use::Uncategorized;
}

std::vector<std::size_t> nearest_neighbour_chain(std::span<const UnitVector> points) {
  const std::size_t n = points.size();
  if (n <= 1) return n == 1 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{};

  std::size_t best_i = 0, best_j = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = angular_separation(points[i], points[j]);
      if (d < best) {
        best = d;
        best_i = i;
        best_j = j;
      }
    }
  }
  std::deque<std::size_t> chain{best_i, best_j};
  std::vector<bool> used(n, false);
  used[best_i] = used[best_j] = true;
  for (std::size_t step = 2; step < n; ++step) {
    double d_best = std::numeric_limits<double>::infinity();
    std::size_t pick = n;
    bool at_front = false;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w]) continue;
      const double d_back = angular_separation(points[chain.back()], points[w]);
      const double d_front = angular_separation(points[chain.front()], points[w]);
      if (d_back < d_best) {
        d_best = d_back;
        pick = w;
        at_front = false;
      }
      if (d_front < d_best) {
        d_best = d_front;
        pick = w;
        at_front = true;
      }
    }
    used[pick] = true;
    if (at_front) {
      chain.push_front(pick);
    } else {
      chain.push_back(pick);
    }
  }
  return {chain.begin(), chain.end()};
}

PruneResult prune_faint(const LineFigure& figure, const StarCatalog& catalog, double max_mag, ReconnectRule rule) {
  std::map<std::string, std::set<std::string>> adjacency;
  for (const auto& e : figure.edges) {
    adjacency[e.a].insert(e.b);
    adjacency[e.b].insert(e.a);
  }

  PruneResult result;
  for (const auto& [id, _] : adjacency) {
    if (catalog.at(id).mag > max_mag) result.removed_stars.push_back(id);
  }

  for (const auto& faint : result.removed_stars) {
    const std::vector<std::string> neighbours(adjacency[faint].begin(), adjacency[faint].end());
    for (const auto& nb : neighbours) adjacency[nb].erase(faint);
    adjacency.erase(faint);
    if (neighbours.size() < 2) continue;

    std::vector<std::pair<std::size_t, std::size_t>> links;
    if (rule == ReconnectRule::Chain) {
      std::vector<UnitVector> pts;
      for (const auto& nb : neighbours) pts.push_back(catalog.position(nb));
      const auto order = nearest_neighbour_chain(pts);
      for (std::size_t i = 0; i + 1 < order.size(); ++i) links.emplace_back(order[i], order[i + 1]);
    } else {
      const auto& centre = catalog.position(faint);
      std::size_t hub = 0;
      for (std::size_t i = 1; i < neighbours.size(); ++i) {
        if (angular_separation(centre, catalog.position(neighbours[i])) <
            angular_separation(centre, catalog.position(neighbours[hub]))) {
          hub = i;
        }
      }
      for (std::size_t i = 0; i < neighbours.size(); ++i) {
        if (i != hub) links.emplace_back(hub, i);
      }
    }
    for (const auto& [i, j] : links) {
      const auto& u = neighbours[i];
      const auto& v = neighbours[j];
      if (adjacency[u].insert(v).second) {
        adjacency[v].insert(u);
        result.added_edges.emplace_back(u, v);
      }
    }
  }

  LineFigure pruned{figure.culture_id, figure.figure_id, figure.name, {}};
  for (const auto& [u, nbs] : adjacency) {
    for (const auto& v : nbs) {
      if (u < v) pruned.edges.emplace_back(u, v);
    }
  }
  std::sort(pruned.edges.begin(), pruned.edges.end());
  if (!pruned.edges.empty()) result.figure = std::move(pruned);
  return result;
}

}  // namespace linefig
