#include "profcheck/presentation.hpp"

#include <algorithm>
#include <set>

#include "profcheck/errors.hpp"

namespace profcheck {

Presentation::Presentation(std::vector<std::string> generators,
                           std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (auto const& name : generators_) {
    if (name.empty()) {
      throw InvalidArgument("empty generator name");
    }
    if (!seen.insert(name).second) {
      throw InvalidArgument("duplicate generator name '" + name + "'");
    }
  }
  relators_.reserve(relators.size());
  for (auto const& r : relators) {
    check_word(r, "relator");
    Word reduced = cyclically_reduce(r);
    if (reduced.empty()) {
      throw InvalidArgument("relator normalizes to the empty word");
    }
    relators_.push_back(std::move(reduced));
  }
}

Presentation Presentation::free(std::vector<std::string> generators) {
  return Presentation(std::move(generators), {});
}

Presentation Presentation::free_of_rank(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) {
    names.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i))
                               : "x" + std::to_string(i + 1));
  }
  return free(std::move(names));
}

std::optional<std::uint32_t> Presentation::find_generator(
    std::string_view name) const {
  auto it = std::find(generators_.begin(), generators_.end(), name);
  if (it == generators_.end()) {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(it - generators_.begin());
}

void Presentation::check_word(Word const& w, std::string_view what) const {
  for (Letter l : w) {
    if (l.gen >= generators_.size() || (l.sign != 1 && l.sign != -1)) {
      throw InvalidArgument(std::string(what) + " uses generator index " +
                            std::to_string(l.gen) + " outside an alphabet of " +
                            std::to_string(generators_.size()));
    }
  }
}

GeneratorMap::GeneratorMap(Presentation src, Presentation tgt,
                           std::vector<Word> imgs)
    : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
  if (images.size() != source.num_generators()) {
    throw InvalidArgument("generator map needs one image per source generator");
  }
  for (auto const& w : images) {
    target.check_word(w, "generator image");
  }
}

Word GeneratorMap::apply(Word const& w) const {
  source.check_word(w, "mapped word");
  return substitute(w, images);
}

namespace {

std::vector<std::string> merged_names(Presentation const& p,
                                      Presentation const& q) {
  std::vector<std::string> names = p.generators();
  std::set<std::string> used(names.begin(), names.end());
  for (auto const& name : q.generators()) {
    std::string candidate = name;
    for (int suffix = 1; used.count(candidate) != 0; ++suffix) {
      candidate = name + "_" + std::to_string(suffix);
    }
    used.insert(candidate);
    names.push_back(std::move(candidate));
  }
  return names;
}

}  // namespace

Presentation free_product(Presentation const& p, Presentation const& q) {
  auto const offset = static_cast<std::uint32_t>(p.num_generators());
  std::vector<Word> relators = p.relators();
  for (auto const& r : q.relators()) {
    relators.push_back(shift(r, offset));
  }
  return Presentation(merged_names(p, q), std::move(relators));
}

Presentation direct_product(Presentation const& p, Presentation const& q) {
  auto const offset = static_cast<std::uint32_t>(p.num_generators());
  std::vector<Word> relators = p.relators();
  for (auto const& r : q.relators()) {
    relators.push_back(shift(r, offset));
  }
  for (std::uint32_t x = 0; x < p.num_generators(); ++x) {
    for (std::uint32_t y = 0; y < q.num_generators(); ++y) {
      relators.push_back(commutator(x, offset + y));
    }
  }
  return Presentation(merged_names(p, q), std::move(relators));
}

Presentation tietze_add_generator(Presentation const& p, std::string const& name,
                                  Word const& definition) {
  if (p.find_generator(name)) {
    throw InvalidArgument("generator '" + name + "' already exists");
  }
  p.check_word(definition, "definition");
  auto names = p.generators();
  names.push_back(name);
  auto relators = p.relators();
  auto const g = static_cast<std::uint32_t>(p.num_generators());
  Word rel{gen(g)};
  Word const def_inv = inverse(definition);
  rel.insert(rel.end(), def_inv.begin(), def_inv.end());
  relators.push_back(std::move(rel));
  return Presentation(std::move(names), std::move(relators));
}

Presentation tietze_remove_generator(Presentation const& p, std::uint32_t g) {
  if (g >= p.num_generators()) {
    throw InvalidArgument("generator index out of range");
  }
  auto const& rels = p.relators();
  auto solver = std::find_if(rels.begin(), rels.end(), [g](Word const& r) {
    return occurrences(r, g) == 1;
  });
  if (solver == rels.end()) {
    throw InvalidArgument("no relator contains generator '" +
                          p.generators()[g] + "' exactly once");
  }
  // Rotate so that g leads: g^e w = 1, hence g = w^-1 (e = 1) or g = w.
  Word const& r = *solver;
  auto pos = static_cast<std::size_t>(
      std::find_if(r.begin(), r.end(), [g](Letter l) { return l.gen == g; }) -
      r.begin());
  Word rest;
  for (std::size_t i = 1; i < r.size(); ++i) {
    rest.push_back(r[(pos + i) % r.size()]);
  }
  Word const value = r[pos].sign > 0 ? inverse(rest) : rest;

  std::vector<Word> images;
  for (std::uint32_t i = 0; i < p.num_generators(); ++i) {
    images.push_back(i == g ? Word{} : Word{gen(i < g ? i : i - 1)});
  }
  for (Letter l : value) {
    images[g].push_back(Letter{l.gen < g ? l.gen : l.gen - 1, l.sign});
  }

  std::vector<Word> relators;
  for (auto it = rels.begin(); it != rels.end(); ++it) {
    if (it == solver) {
      continue;
    }
    Word w = cyclically_reduce(substitute(*it, images));
    if (!w.empty()) {
      relators.push_back(std::move(w));
    }
  }
  auto names = p.generators();
  names.erase(names.begin() + g);
  return Presentation(std::move(names), std::move(relators));
}

std::string format_word(Word const& w, Presentation const& p) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) {
      ++j;
    }
    long const exponent = static_cast<long>(j - i) * w[i].sign;
    if (!out.empty()) {
      out += ' ';
    }
    out += p.generators().at(w[i].gen);
    if (exponent != 1) {
      out += '^' + std::to_string(exponent);
    }
    i = j;
  }
  return out;
}

std::string format_presentation(Presentation const& p) {
  std::string out = "<";
  for (auto const& g : p.generators()) {
    out += ' ' + g;
  }
  out += " |";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    out += (i == 0 ? " " : ", ") + format_word(p.relators()[i], p);
  }
  out += " >";
  return out;
}

std::string format_named(std::string const& name, Presentation const& p) {
  return name + " := " + format_presentation(p);
}

}  // namespace profcheck
