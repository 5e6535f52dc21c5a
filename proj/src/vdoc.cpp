#include "concomp/vdoc.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "concomp/fragments.hpp"

namespace concomp {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// camelCase / delimiter / digit-run splitter shared by labels and local ids
std::vector<std::string> split_word(const std::string& word) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (size_t i = 0; i < word.size(); ++i) {
    char c = word[i];
    if (c == '-' || c == '_' || c == '.' || is_digit(c)) {
      flush();
      continue;
    }
    if (is_upper(c)) {
      // boundary at lower->Upper and at the last capital of an acronym run
      bool prev_lower = i > 0 && is_lower(word[i - 1]);
      bool next_lower = i + 1 < word.size() && is_lower(word[i + 1]);
      bool prev_upper = i > 0 && is_upper(word[i - 1]);
      if (prev_lower || (prev_upper && next_lower)) flush();
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

bool excluded_namespace(const std::string& iri) {
  return iri.rfind(vocab::rdf_ns, 0) == 0 || iri.rfind(vocab::rdfs_ns, 0) == 0 ||
         iri.rfind(vocab::owl_ns, 0) == 0 || iri.rfind(vocab::xsd_ns, 0) == 0;
}

bool noise_token(const std::string& tok) {
  if (tok.size() < 2) return true;
  return std::all_of(tok.begin(), tok.end(), [](char c) { return is_digit(c); });
}

}  // namespace

std::vector<std::string> local_id_tokens(const std::string& iri) {
  std::string local = iri;
  auto hash = local.find_last_of('#');
  if (hash != std::string::npos) {
    local = local.substr(hash + 1);
  } else {
    while (!local.empty() && local.back() == '/') local.pop_back();
    auto slash = local.find_last_of('/');
    if (slash != std::string::npos) local = local.substr(slash + 1);
  }
  return split_word(local);
}

std::vector<std::string> tokenize_label(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      auto parts = split_word(word);
      out.insert(out.end(), parts.begin(), parts.end());
      word.clear();
    }
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      word += c;
    }
  }
  flush();
  return out;
}

VirtualDocument build_virtual_document(const Community& community, const OntologyDoc& doc,
                                       const std::string& language) {
  auto ents = community_entities(community);
  std::vector<std::string> entities;
  entities.insert(entities.end(), ents.classes.begin(), ents.classes.end());
  entities.insert(entities.end(), ents.properties.begin(), ents.properties.end());
  std::sort(entities.begin(), entities.end());
  entities.erase(std::unique(entities.begin(), entities.end()), entities.end());

  VirtualDocument vd;
  vd.community_id = community.id;
  vd.ontology_id = community.ontology_id;

  std::set<std::string> seen;
  auto push = [&](const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
      if (noise_token(t)) continue;
      if (seen.insert(t).second) vd.terms.push_back(t);
    }
  };

  for (const auto& e : entities) {
    if (excluded_namespace(e)) continue;
    auto labels = labels_of(doc, e, language);
    if (labels.empty()) {
      push(local_id_tokens(e));
    } else {
      for (const auto& l : labels) push(tokenize_label(l));
    }
  }
  return vd;
}

}  // namespace concomp
