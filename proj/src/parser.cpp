#include "npa/parser.hpp"

#include <cctype>

namespace npa {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, size_t pos) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    [[noreturn]] void fail_here(const std::string& msg) const { fail(msg, tok_.pos); }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_ = Token{Tok::End, "", i_};
            return;
        }
        const char c = src_[i_];
        auto single = [&](Tok k) {
            tok_ = Token{k, std::string(1, c), i_};
            ++i_;
        };
        switch (c) {
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '/': single(Tok::Slash); return;
            case '^': single(Tok::Caret); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case ',': single(Tok::Comma); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            tok_ = Token{Tok::Num, src_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < src_.size() && std::isalpha(static_cast<unsigned char>(src_[j]))) ++j;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            tok_ = Token{Tok::Ident, src_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        fail("unexpected character '" + std::string(1, c) + "'", i_);
    }

    const std::string& src_;
    size_t i_ = 0;
    Token tok_;
};

// Values are fractions n / base^k; k stays zero outside localized contexts.
struct Value {
    Element num;
    int k = 0;
};

struct Context {
    AlgebraPtr alg;
    const TensorAlgebraSpec* tensor = nullptr;
    LocAlgebraPtr loc;
};

class Parser {
public:
    Parser(Lexer& lex, Context ctx) : lex_(lex), ctx_(std::move(ctx)) {}

    Value parse_expr() {
        bool negate = false;
        if (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            negate = lex_.take().kind == Tok::Minus;
        }
        Value acc = parse_term();
        if (negate) acc = vneg(acc);
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            const bool minus = lex_.take().kind == Tok::Minus;
            Value rhs = parse_term();
            acc = minus ? vsub(acc, rhs) : vadd(acc, rhs);
        }
        return acc;
    }

    void expect_end() {
        if (lex_.peek().kind != Tok::End) lex_.fail_here("trailing input after expression");
    }

private:
    Value parse_term() {
        Value acc = parse_factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            acc = vmul(acc, parse_factor());
        }
        return acc;
    }

    Value parse_factor() {
        Value base = parse_atom();
        if (lex_.peek().kind == Tok::Caret) {
            Token caret = lex_.take();
            if (lex_.peek().kind != Tok::Num) lex_.fail("exponent must be a natural number", caret.pos);
            const long e = std::stol(lex_.take().text);
            Value acc = vone();
            for (long i = 0; i < e; ++i) acc = vmul(acc, base);
            return acc;
        }
        return base;
    }

    Value parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Num: {
                lex_.take();
                Rat r = rat_from_string(t.text);
                if (lex_.peek().kind == Tok::Slash) {
                    lex_.take();
                    if (lex_.peek().kind != Tok::Num) lex_.fail_here("denominator must be a natural number");
                    Token d = lex_.take();
                    Rat den = rat_from_string(d.text);
                    if (is_zero(den)) lex_.fail("zero denominator", d.pos);
                    r /= den;
                }
                return vconst(r);
            }
            case Tok::LParen: {
                lex_.take();
                Value v = parse_expr();
                if (lex_.peek().kind != Tok::RParen) lex_.fail_here("expected ')'");
                lex_.take();
                return v;
            }
            case Tok::Ident: {
                if (t.text == "ox") return parse_ox();
                if (t.text == "inv") return parse_inv();
                return parse_gen();
            }
            default:
                lex_.fail("expected a number, generator, or '('", t.pos);
        }
    }

    Value parse_ox() {
        Token kw = lex_.take();
        if (!ctx_.tensor) lex_.fail("ox(...) needs a tensor algebra", kw.pos);
        expect(Tok::LParen, "expected '(' after ox");
        Parser left(lex_, Context{ctx_.tensor->left, nullptr, nullptr});
        Value a = left.parse_expr();
        expect(Tok::Comma, "expected ',' between tensor slots");
        Parser right(lex_, Context{ctx_.tensor->right, nullptr, nullptr});
        Value b = right.parse_expr();
        expect(Tok::RParen, "expected ')' closing ox");
        if (a.k != 0 || b.k != 0) lex_.fail("inv(...) cannot appear inside ox", kw.pos);
        return Value{tensor_elem(*ctx_.tensor, a.num, b.num), 0};
    }

    Value parse_inv() {
        Token kw = lex_.take();
        if (!ctx_.loc) lex_.fail("inv(...) needs a localized algebra", kw.pos);
        expect(Tok::LParen, "expected '(' after inv");
        Value v = parse_expr();
        expect(Tok::RParen, "expected ')' closing inv");
        if (v.k != 0) lex_.fail("nested inv(...) is not supported", kw.pos);
        // The argument must be a power of the localization base.
        const Element& base = ctx_.loc->base();
        Element cur = v.num;
        int power = 0;
        while (!cur.is_constant()) {
            auto q = exact_divide(cur, base);
            if (!q) lex_.fail("inv argument must be a power of the localization base", kw.pos);
            cur = std::move(*q);
            ++power;
        }
        if (cur != Element::constant(ctx_.alg, 1))
            lex_.fail("inv argument must be a power of the localization base", kw.pos);
        if (power == 0) return vone();  // inv(1)
        return Value{Element::constant(ctx_.alg, 1), power};
    }

    Value parse_gen() {
        Token t = lex_.take();
        size_t letters = 0;
        while (letters < t.text.size() && std::isalpha(static_cast<unsigned char>(t.text[letters])))
            ++letters;
        if (letters != 1) lex_.fail("unknown generator '" + t.text + "'", t.pos);
        const char letter = t.text[0];
        int index = 1;
        if (letters < t.text.size()) index = std::stoi(t.text.substr(letters));
        const int g = ctx_.alg->gen_index(letter, index);
        if (g < 0)
            lex_.fail("generator '" + t.text + "' does not exist in " + ctx_.alg->describe(), t.pos);
        return Value{Element::generator(ctx_.alg, g), 0};
    }

    void expect(Tok k, const std::string& msg) {
        if (lex_.peek().kind != k) lex_.fail_here(msg);
        lex_.take();
    }

    Value vconst(const Rat& r) { return Value{Element::constant(ctx_.alg, r), 0}; }
    Value vone() { return vconst(Rat(1)); }

    Value vneg(const Value& a) { return Value{-a.num, a.k}; }

    Value vadd(const Value& a, const Value& b) {
        if (!ctx_.loc) return Value{a.num + b.num, 0};
        LocElement r = loc_add(loc_make(ctx_.loc, a.num, a.k), loc_make(ctx_.loc, b.num, b.k));
        return Value{r.numerator, r.denom_exp};
    }

    Value vsub(const Value& a, const Value& b) { return vadd(a, vneg(b)); }

    Value vmul(const Value& a, const Value& b) {
        if (!ctx_.loc) return Value{mul(a.num, b.num), 0};
        LocElement r = loc_mul(loc_make(ctx_.loc, a.num, a.k), loc_make(ctx_.loc, b.num, b.k));
        return Value{r.numerator, r.denom_exp};
    }

    Lexer& lex_;
    Context ctx_;
};

Value run_parser(const std::string& src, Context ctx) {
    Lexer lex(src);
    Parser p(lex, std::move(ctx));
    Value v = p.parse_expr();
    p.expect_end();
    return v;
}

}  // namespace

Element parse_element(const std::string& src, const AlgebraPtr& alg) {
    return run_parser(src, Context{alg, nullptr, nullptr}).num;
}

Element parse_element(const std::string& src, const TensorAlgebraSpec& tensor) {
    return run_parser(src, Context{tensor.combined, &tensor, nullptr}).num;
}

LocElement parse_loc_element(const std::string& src, const LocAlgebraPtr& loc) {
    Value v = run_parser(src, Context{loc->algebra(), nullptr, loc});
    return loc_make(loc, v.num, v.k);
}

ParsedAlgebra parse_algebra_spec(const std::string& spec) {
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError("bad algebra spec '" + spec + "': " + msg, 1, 1);
    };

    std::string body = spec;
    std::string loc_expr;
    // A '@loc=' suffix outside parentheses marks a localization.
    int depth = 0;
    for (size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        if (body[i] == ')') --depth;
        if (depth == 0 && body.compare(i, 5, "@loc=") == 0) {
            loc_expr = body.substr(i + 5);
            body = body.substr(0, i);
            break;
        }
    }

    ParsedAlgebra out;
    if (body.rfind("weyl:", 0) == 0 || body.rfind("sympoly:", 0) == 0) {
        const bool weyl = body[0] == 'w';
        const std::string num = body.substr(weyl ? 5 : 8);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw fail("generator pair count must be a natural number");
        const int n = std::stoi(num);
        if (n < 1 || n > 16) throw fail("pair count out of range 1..16");
        out.alg = weyl ? AlgebraSpec::weyl(n) : AlgebraSpec::symplectic_poly(n);
        out.canonical = body;
    } else if (body.rfind("tensor(", 0) == 0 && body.back() == ')') {
        const std::string inner = body.substr(7, body.size() - 8);
        int d = 0;
        size_t comma = std::string::npos;
        for (size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(') ++d;
            if (inner[i] == ')') --d;
            if (d == 0 && inner[i] == ',') {
                comma = i;
                break;
            }
        }
        if (comma == std::string::npos) throw fail("tensor(...) needs two factors");
        ParsedAlgebra left = parse_algebra_spec(inner.substr(0, comma));
        ParsedAlgebra right = parse_algebra_spec(inner.substr(comma + 1));
        if (left.loc || right.loc) throw fail("tensor factors cannot be localized");
        out.tensor = tensor_product(left.alg, right.alg);
        out.alg = out.tensor->combined;
        out.canonical = "tensor(" + left.canonical + "," + right.canonical + ")";
    } else {
        throw fail("expected weyl:n, sympoly:n, or tensor(...)");
    }

    if (!loc_expr.empty()) {
        if (out.alg->algebra_class() != AlgebraClass::Poly)
            throw fail("@loc= needs a Class 1 algebra");
        Element base = parse_element(loc_expr, out.alg);
        out.loc = localize(out.alg, std::move(base));
        out.canonical += "@loc=" + loc_expr;
    }
    return out;
}

}  // namespace npa
