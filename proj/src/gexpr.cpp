#include "metastab/gexpr.hpp"

#include <cctype>

#include "metastab/errors.hpp"

namespace metastab {

namespace {

struct Token {
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    } else if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      throw parse_error("unexpected character '" + std::string(1, text[i]) + "'", i);
    }
    toks.push_back({text.substr(start, i - start), start});
  }
  return toks;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::size_t end) : toks_(std::move(toks)), end_(end) {}

  GExpr expr() {
    Token t = take("expected 'const', 'id', 'affine' or 'comp'");
    if (t.text == "const") return GExpr::constant(nat());
    if (t.text == "id") return GExpr::identity();
    if (t.text == "affine") {
      Nat a = nat();
      return GExpr::affine(std::move(a), nat());
    }
    if (t.text == "comp") {
      GExpr outer = expr();
      return GExpr::compose(std::move(outer), expr());
    }
    throw parse_error("expected 'const', 'id', 'affine' or 'comp', got '" + t.text + "'",
                      t.offset);
  }

  void finish() {
    if (pos_ < toks_.size())
      throw parse_error("trailing input '" + toks_[pos_].text + "'", toks_[pos_].offset);
  }

 private:
  Token take(const std::string& expected) {
    if (pos_ >= toks_.size()) throw parse_error(expected + ", got end of input", end_);
    return toks_[pos_++];
  }

  Nat nat() {
    Token t = take("expected a nonnegative integer");
    if (!std::isdigit(static_cast<unsigned char>(t.text[0])))
      throw parse_error("expected a nonnegative integer, got '" + t.text + "'", t.offset);
    return Nat(t.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t end_;
};

}  // namespace

GExpr GExpr::constant(Nat k) { return GExpr(Kind::constant, std::move(k), Nat(0)); }

GExpr GExpr::identity() { return GExpr(Kind::identity, Nat(0), Nat(0)); }

GExpr GExpr::affine(Nat a, Nat b) { return GExpr(Kind::affine, std::move(a), std::move(b)); }

GExpr GExpr::compose(GExpr outer, GExpr inner) {
  GExpr e(Kind::compose, Nat(0), Nat(0));
  e.outer_ = std::make_shared<const GExpr>(std::move(outer));
  e.inner_ = std::make_shared<const GExpr>(std::move(inner));
  return e;
}

GExpr GExpr::parse(const std::string& text) {
  Parser p(lex(text), text.size());
  GExpr e = p.expr();
  p.finish();
  return e;
}

std::string GExpr::str() const {
  switch (kind_) {
    case Kind::constant:
      return "const " + a_.str();
    case Kind::identity:
      return "id";
    case Kind::affine:
      return "affine " + a_.str() + " " + b_.str();
    case Kind::compose:
      return "comp " + outer_->str() + " " + inner_->str();
  }
  throw invariant_error("GExpr: bad kind");
}

FuncNN GExpr::func() const {
  switch (kind_) {
    case Kind::constant:
      return const_fn(a_);
    case Kind::identity:
      return identity_fn();
    case Kind::affine:
      return affine_fn(a_, b_);
    case Kind::compose: {
      FuncNN f = outer_->func();
      FuncNN g = inner_->func();
      return FuncNN([f, g](const Nat& n) { return f(g(n)); }, /*nondecreasing=*/true,
                    [f, g](const Rat& l) { return f.log2_range_bound(g.log2_range_bound(l)); });
    }
  }
  throw invariant_error("GExpr: bad kind");
}

bool operator==(const GExpr& a, const GExpr& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case GExpr::Kind::constant:
      return a.a_ == b.a_;
    case GExpr::Kind::identity:
      return true;
    case GExpr::Kind::affine:
      return a.a_ == b.a_ && a.b_ == b.b_;
    case GExpr::Kind::compose:
      return *a.outer_ == *b.outer_ && *a.inner_ == *b.inner_;
  }
  return false;
}

}  // namespace metastab
