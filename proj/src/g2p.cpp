// Copyright 2026 The ipakit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipakit/g2p.hpp"

#include <algorithm>
#include <map>

#include "ipakit/errors.hpp"
#include "ipakit/text_io.hpp"
#include "ipakit/unicode.hpp"

namespace ipakit::g2p {
namespace {

using Classes = std::map<std::string, std::vector<ContextAlt>, std::less<>>;

bool is_word_char(char32_t cp) { return unicode::is_letter(cp) || unicode::is_combining_mark(cp); }

std::string_view strip_comment(std::string_view line) {
  // '#' opens a comment at line start or after whitespace.
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
      return line.substr(0, i);
  }
  return line;
}

std::vector<ContextAlt> parse_alternatives(std::string_view body, const Classes &classes,
                                           std::size_t line) {
  std::vector<ContextAlt> alts;
  for (auto part : split(body, '|')) {
    part = trim(part);
    if (part.empty()) throw ParseError(line, "empty alternative in '(" + std::string(body) + ")'");
    if (part == "^" || part == "$") {
      alts.push_back({true, {}});
    } else if (part.size() > 4 && part.starts_with("::") && part.ends_with("::")) {
      auto it = classes.find(part.substr(2, part.size() - 4));
      if (it == classes.end()) throw ParseError(line, "undefined class " + std::string(part));
      alts.insert(alts.end(), it->second.begin(), it->second.end());
    } else {
      alts.push_back({false, unicode::decode(unicode::nfc(part))});
    }
  }
  return alts;
}

std::vector<ContextItem> parse_context(std::string_view text, const Classes &classes,
                                       std::size_t line) {
  std::vector<ContextItem> items;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '^' || c == '$') {
      items.push_back({ContextAlt{true, {}}});
      ++i;
    } else if (text.substr(i).starts_with("::")) {
      const auto end = text.find("::", i + 2);
      if (end == std::string_view::npos) throw ParseError(line, "unterminated class reference");
      items.push_back(parse_alternatives(text.substr(i, end + 2 - i), classes, line));
      i = end + 2;
    } else if (c == '(') {
      const auto end = text.find(')', i);
      if (end == std::string_view::npos) throw ParseError(line, "unterminated group");
      items.push_back(parse_alternatives(text.substr(i + 1, end - i - 1), classes, line));
      i = end + 1;
    } else if (c == ')' || c == '|') {
      throw ParseError(line, std::string("unexpected '") + c + "' in context");
    } else {
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '(' &&
             text[j] != '^' && text[j] != '$' && !text.substr(j).starts_with("::"))
        ++j;
      items.push_back({ContextAlt{false, unicode::decode(unicode::nfc(text.substr(i, j - i)))}});
      i = j;
    }
  }
  return items;
}

bool boundary_at(const std::u32string &s, std::size_t pos, bool before) {
  if (before) return pos == 0 || !is_word_char(s[pos - 1]);
  return pos == s.size() || !is_word_char(s[pos]);
}

bool match_left(const std::u32string &s, const std::vector<ContextItem> &items, std::size_t k,
                std::size_t pos) {
  if (k == 0) return true;
  for (const auto &alt : items[k - 1]) {
    if (alt.boundary) {
      if (boundary_at(s, pos, true) && match_left(s, items, k - 1, pos)) return true;
    } else if (alt.text.size() <= pos &&
               s.compare(pos - alt.text.size(), alt.text.size(), alt.text) == 0 &&
               match_left(s, items, k - 1, pos - alt.text.size())) {
      return true;
    }
  }
  return false;
}

bool match_right(const std::u32string &s, const std::vector<ContextItem> &items, std::size_t k,
                 std::size_t pos) {
  if (k == items.size()) return true;
  for (const auto &alt : items[k]) {
    if (alt.boundary) {
      if (boundary_at(s, pos, false) && match_right(s, items, k + 1, pos)) return true;
    } else if (pos + alt.text.size() <= s.size() &&
               s.compare(pos, alt.text.size(), alt.text) == 0 &&
               match_right(s, items, k + 1, pos + alt.text.size())) {
      return true;
    }
  }
  return false;
}

bool rule_matches(const std::u32string &s, std::size_t pos, const RewriteRule &rule) {
  const auto n = rule.pattern.size();
  if (pos + n > s.size() || s.compare(pos, n, rule.pattern) != 0) return false;
  return match_left(s, rule.left, rule.left.size(), pos) && match_right(s, rule.right, 0, pos + n);
}

int parse_priority(std::string_view token, std::size_t line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(token), &used);
    if (used == token.size()) return v;
  } catch (const std::exception &) {
  }
  throw ParseError(line, "bad rank '@" + std::string(token) + "'");
}

}  // namespace

RuleSet parse_ruleset(std::string_view source, std::string_view locale) {
  RuleSet rs;
  rs.locale = std::string(locale);
  Classes classes;

  const auto lines = split_lines(source);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    std::string_view line = lines[n];
    if (n == 0 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    line = trim(strip_comment(line));
    if (line.empty()) continue;

    if (line.starts_with("!")) {
      const auto parts = split(line, ' ');
      if (parts.size() == 2 && parts[0] == "!case" && (parts[1] == "lower" || parts[1] == "preserve")) {
        rs.lowercase = parts[1] == "lower";
        continue;
      }
      throw ParseError(line_no, "unknown directive '" + std::string(line) + "'");
    }

    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      // Class definition: ::NAME:: = a|b|c
      const auto eq = line.find('=');
      if (line.starts_with("::") && eq != std::string_view::npos) {
        const auto name = trim(line.substr(0, eq));
        if (name.size() <= 4 || !name.ends_with("::"))
          throw ParseError(line_no, "bad class name '" + std::string(name) + "'");
        classes[std::string(name.substr(2, name.size() - 4))] =
            parse_alternatives(trim(line.substr(eq + 1)), classes, line_no);
        continue;
      }
      throw ParseError(line_no, "expected 'pattern -> replacement'");
    }

    RewriteRule rule;
    rule.line = line_no;
    const auto pattern = trim(line.substr(0, arrow));
    if (pattern.empty()) throw ParseError(line_no, "empty pattern");
    rule.pattern = unicode::decode(unicode::nfc(pattern));

    std::string_view rest = trim(line.substr(arrow + 2));
    if (const auto at = rest.rfind('@'); at != std::string_view::npos &&
                                         (at == 0 || rest[at - 1] == ' ' || rest[at - 1] == '\t')) {
      rule.priority = parse_priority(trim(rest.substr(at + 1)), line_no);
      rest = trim(rest.substr(0, at));
    }
    const auto slash = rest.find('/');
    rule.replacement = unicode::nfc(trim(rest.substr(0, slash)));
    if (slash != std::string_view::npos) {
      const auto env = rest.substr(slash + 1);
      const auto bar = env.find('_');
      if (bar == std::string_view::npos || env.find('_', bar + 1) != std::string_view::npos)
        throw ParseError(line_no, "context needs exactly one '_'");
      rule.left = parse_context(trim(env.substr(0, bar)), classes, line_no);
      rule.right = parse_context(trim(env.substr(bar + 1)), classes, line_no);
    }
    rs.rules.push_back(std::move(rule));
  }

  std::stable_sort(rs.rules.begin(), rs.rules.end(), [](const RewriteRule &a, const RewriteRule &b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.pattern.size() > b.pattern.size();
  });
  for (std::size_t i = 0; i < rs.rules.size(); ++i)
    rs.by_first[rs.rules[i].pattern.front()].push_back(i);
  return rs;
}

RuleSet load_ruleset_file(const std::filesystem::path &path, std::string_view locale) {
  return parse_ruleset(read_file(path), locale);
}

std::string transliterate(const RuleSet &rules, std::string_view text, Mode mode,
                          FireCounts *fired) {
  if (fired != nullptr) fired->resize(rules.rules.size(), 0);
  std::string prepared = unicode::nfc(text);
  if (rules.lowercase) prepared = unicode::nfc(unicode::to_lower(prepared, rules.locale.c_str()));
  const std::u32string s = unicode::decode(prepared);

  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const RewriteRule *hit = nullptr;
    if (auto it = rules.by_first.find(s[pos]); it != rules.by_first.end()) {
      for (std::size_t idx : it->second) {
        if (rule_matches(s, pos, rules.rules[idx])) {
          hit = &rules.rules[idx];
          if (fired != nullptr) ++(*fired)[idx];
          break;
        }
      }
    }
    if (hit != nullptr) {
      out += hit->replacement;
      pos += hit->pattern.size();
      continue;
    }
    const char32_t cp = s[pos];
    if (mode == Mode::kStrict && !unicode::is_whitespace(cp) && !unicode::is_punctuation(cp))
      throw TransliterationError(pos, unicode::encode(cp));
    out += unicode::encode(cp);
    ++pos;
  }
  return normalize_ipa(out);
}

ValidationReport validate_ruleset(const RuleSet &rules, const PhoneInventory &inventory,
                                  const std::vector<std::string> &lexicon) {
  ValidationReport report;
  if (lexicon.empty()) return report;
  FireCounts fired(rules.rules.size(), 0);
  for (const auto &word : lexicon) {
    std::string output;
    try {
      output = transliterate(rules, word, Mode::kStrict, &fired);
      segment(inventory, output, SegmentMode::kStrict);
    } catch (const Error &e) {
      report.failures.push_back({word, output, e.what()});
    }
  }
  for (std::size_t i = 0; i < rules.rules.size(); ++i)
    if (fired[i] == 0) report.unused_rule_lines.push_back(rules.rules[i].line);
  std::sort(report.unused_rule_lines.begin(), report.unused_rule_lines.end());
  return report;
}

std::vector<LexiconEntry> load_lexicon(const std::filesystem::path &path) {
  const std::string text = read_file(path);
  std::vector<LexiconEntry> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty() || line.starts_with("#")) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2)
      throw ParseError(line_no, "lexicon row needs 2 tab-separated columns: " + path.string());
    out.push_back({unicode::nfc(cols[0]), unicode::nfc(cols[1])});
  }
  return out;
}

std::vector<std::string> available_locales(const std::filesystem::path &rules_dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto &entry : std::filesystem::directory_iterator(rules_dir, ec)) {
    if (entry.path().extension() == ".g2p") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ipakit::g2p
