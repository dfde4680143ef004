#include "hypertree/newick.hpp"

#include "hypertree/errors.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace hypertree {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw ArgumentError("could not format number");
  return std::string(buf, end);
}

namespace {

bool needs_quotes(const std::string& label) {
  if (label.empty()) return true;
  for (char ch : label) {
    if (std::isspace(static_cast<unsigned char>(ch))) return true;
    switch (ch) {
      case '(': case ')': case '[': case ']': case '\'': case ':': case ';': case ',':
        return true;
      default:
        break;
    }
  }
  return false;
}

std::string quote_label(const std::string& label) {
  if (!needs_quotes(label)) return label;
  std::string out = "'";
  for (char ch : label) {
    if (ch == '\'') out += '\'';
    out += ch;
  }
  return out + "'";
}

void write_subtree(const WeightedTree& t, const std::vector<std::string>& names, VertexId v,
                   std::optional<VertexId> parent, std::string& out) {
  std::vector<Adjacent> children;
  for (const Adjacent& a : t.neighbors(v))
    if (!parent || a.vertex != *parent) children.push_back(a);
  if (!children.empty()) {
    out += '(';
    for (std::size_t k = 0; k < children.size(); ++k) {
      if (k) out += ',';
      write_subtree(t, names, children[k].vertex, v, out);
      out += ':';
      out += format_double(t.edges()[children[k].edge].weight);
    }
    out += ')';
  }
  out += names[v];
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WeightedTree parse() {
    std::optional<bool> rooted_hint;
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (text_.substr(pos_, 4) == "[&R]" || text_.substr(pos_, 4) == "[&r]") rooted_hint = true;
    if (text_.substr(pos_, 4) == "[&U]" || text_.substr(pos_, 4) == "[&u]") rooted_hint = false;
    skip();
    const std::size_t top = node(std::nullopt);
    skip();
    if (!eat(';')) fail("expected ';'");
    skip();
    if (pos_ != text_.size()) fail("unexpected text after ';'");

    std::vector<VertexId> leaves;
    std::vector<std::string> labels;
    std::optional<VertexId> root;
    // Every named node is a labelled vertex, internal ones included.
    for (std::size_t v = 0; v < label_.size(); ++v) {
      if (child_count_[v] == 0 && label_[v].empty()) fail("leaf without a label");
      if (label_[v].empty()) continue;
      leaves.push_back(v);
      labels.push_back(label_[v]);
    }
    if (rooted_hint.value_or(child_count_[top] == 2 && label_[top].empty())) root = top;
    try {
      return WeightedTree(label_.size(), std::move(edges_), std::move(leaves), std::move(labels), root);
    } catch (const std::exception& e) {
      throw ParseError(std::string("invalid Newick tree: ") + e.what());
    }
  }

 private:
  std::size_t node(std::optional<VertexId> parent) {
    const std::size_t id = label_.size();
    label_.emplace_back();
    child_count_.push_back(0);
    (void)parent;
    skip();
    if (eat('(')) {
      do {
        skip();
        const std::size_t child = node(id);
        skip();
        double length = 0.0;
        if (eat(':')) {
          skip();
          length = number();
        }
        edges_.push_back({id, child, length});
        ++child_count_[id];
        skip();
      } while (eat(','));
      if (!eat(')')) fail("expected ')' or ','");
      skip();
    }
    label_[id] = label();
    return id;
  }

  std::string label() {
    std::string out;
    if (eat('\'')) {
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        const char ch = text_[pos_++];
        if (ch == '\'') {
          if (pos_ < text_.size() && text_[pos_] == '\'') {
            out += '\'';
            ++pos_;
          } else {
            break;
          }
        } else {
          out += ch;
        }
      }
      return out;
    }
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == '[' ||
          ch == ':' || ch == ';' || ch == ',' || ch == '\'') {
        break;
      }
      out += ch;
      ++pos_;
    }
    return out;
  }

  double number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("expected a branch length");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '[') {
        const auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  bool eat(char ch) {
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("Newick parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> label_;
  std::vector<std::size_t> child_count_;
  std::vector<Edge> edges_;
};

}  // namespace

std::string to_newick(const WeightedTree& t) {
  std::vector<std::string> names(t.vertex_count());
  for (std::size_t i = 0; i < t.leaf_count(); ++i) names[t.leaves()[i]] = quote_label(t.labels()[i]);

  VertexId start = 0;
  if (t.root()) {
    start = *t.root();
  } else if (t.leaf_count() > 0) {
    start = t.leaves()[0];
    if (t.degree(start) == 1 && t.degree(t.neighbors(start)[0].vertex) > 1) {
      start = t.neighbors(start)[0].vertex;
    }
  }
  // Mark trees whose rootedness the two-children convention would misread.
  std::string out;
  const bool reads_rooted = t.degree(start) == 2 && t.leaf_position(start) == std::nullopt;
  if (t.root() && !reads_rooted) out += "[&R] ";
  if (!t.root() && reads_rooted) out += "[&U] ";
  write_subtree(t, names, start, std::nullopt, out);
  out += ';';
  return out;
}

WeightedTree parse_newick(std::string_view text) { return Parser(text).parse(); }

}  // namespace hypertree
