#include "limitalg/tower_parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace limitalg {

ParseError::ParseError(int line, int col, const std::string& msg)
    : TowerError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
      line_(line), col_(col)
{
}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n')
                adv(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        const int l = line, cl = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), l, cl});
            adv(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                                    (s[j] == '-' && j + 1 < s.size() && s[j + 1] != '>')))
                ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), l, cl});
            adv(j - i);
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Punct, "->", l, cl});
            adv(2);
        } else if (std::string("=[],{}():").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), l, cl});
            adv(1);
        } else {
            throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    const Token& peek() const { return t_[p_]; }
    bool at(const std::string& text) const
    {
        return peek().kind != Tok::End && peek().text == text;
    }
    bool at_end() const { return peek().kind == Tok::End; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(peek().line, peek().col, msg);
    }
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const
    {
        throw ParseError(t.line, t.col, msg);
    }

    const Token& expect(const std::string& text)
    {
        if (!at(text))
            fail("expected '" + text + "'" + found());
        return t_[p_++];
    }
    int integer()
    {
        if (peek().kind != Tok::Int)
            fail("expected an integer" + found());
        const auto& s = t_[p_++].text;
        if (s.size() > 9)
            fail_at(t_[p_ - 1], "integer too large");
        return std::stoi(s);
    }
    std::string ident()
    {
        if (peek().kind != Tok::Ident)
            fail("expected a name" + found());
        return t_[p_++].text;
    }
    const Token& take() { return t_[p_++]; }

    std::vector<Word> targets()
    {
        expect("{");
        std::map<int, Word> words;
        while (!at("}")) {
            const Token& kw = peek();
            expect("target");
            const int t = integer();
            if (words.count(t))
                fail_at(kw, "duplicate target " + std::to_string(t));
            expect(":");
            Word w;
            while (at("(")) {
                take();
                DiagonalLabel l;
                l.summand = integer();
                expect(",");
                l.pos = integer();
                expect(")");
                w.push_back(l);
            }
            words[t] = std::move(w);
        }
        const Token& close = expect("}");
        std::vector<Word> out;
        for (auto& [t, w] : words) {
            if (t != static_cast<int>(out.size()))
                fail_at(close, "target " + std::to_string(out.size()) + " is missing");
            out.push_back(std::move(w));
        }
        return out;
    }

private:
    std::string found() const
    {
        return at_end() ? ", found end of input" : ", found '" + peek().text + "'";
    }

    std::vector<Token> t_;
    size_t p_ = 0;
};

} // namespace

TowerDocument parse_document(const std::string& text, const std::string& name)
{
    Parser ps(lex(text));
    std::map<int, LevelShape> levels;
    std::map<int, std::vector<Word>> embeds;
    std::map<int, Token> embed_pos;
    Continuation cont = Continuation::None;
    int spawn = 0;
    std::vector<ActionBlock> actions;

    while (!ps.at_end()) {
        const Token kw = ps.peek();
        if (kw.kind != Tok::Ident)
            ps.fail("expected 'level', 'embed', 'repeat', 'spawn' or 'action', found '" + kw.text +
                    "'");
        if (kw.text == "level") {
            ps.take();
            const int n = ps.integer();
            if (levels.count(n))
                ps.fail_at(kw, "level " + std::to_string(n) + " defined twice");
            ps.expect("=");
            ps.expect("[");
            LevelShape sh;
            sh.sizes.push_back(ps.integer());
            while (ps.at(",")) {
                ps.take();
                sh.sizes.push_back(ps.integer());
            }
            ps.expect("]");
            for (int k : sh.sizes)
                if (k < 1)
                    ps.fail_at(kw, "block sizes must be positive");
            levels[n] = sh;
        } else if (kw.text == "embed") {
            ps.take();
            const int a = ps.integer();
            ps.expect("->");
            const Token bt = ps.peek();
            const int b = ps.integer();
            if (b != a + 1)
                ps.fail_at(bt, "embeddings must go from level n to level n+1");
            if (embeds.count(a))
                ps.fail_at(kw, "embedding " + std::to_string(a) + " -> " + std::to_string(b) +
                                   " defined twice");
            embeds[a] = ps.targets();
            embed_pos.emplace(a, kw);
        } else if (kw.text == "repeat" || kw.text == "spawn") {
            ps.take();
            if (cont != Continuation::None)
                ps.fail_at(kw, "only one of 'repeat'/'spawn' may appear, once");
            if (kw.text == "repeat") {
                cont = Continuation::Repeat;
            } else {
                cont = Continuation::Spawn;
                spawn = ps.integer();
            }
        } else if (kw.text == "action") {
            ps.take();
            ActionBlock ab;
            ab.generator = ps.ident();
            ps.expect("order");
            ab.order = ps.integer();
            if (ab.order < 1)
                ps.fail_at(kw, "action order must be positive");
            ps.expect("{");
            while (!ps.at("}")) {
                ps.expect("level");
                ActionLevelMap m;
                m.from = ps.integer();
                ps.expect("->");
                m.to = ps.integer();
                m.words = ps.targets();
                ab.maps.push_back(std::move(m));
            }
            ps.expect("}");
            actions.push_back(std::move(ab));
        } else {
            ps.fail("unknown directive '" + kw.text + "'");
        }
    }

    if (levels.empty())
        throw ParseError(1, 1, "no levels defined");
    std::vector<LevelShape> lv;
    for (auto& [n, sh] : levels) {
        if (n != static_cast<int>(lv.size()))
            throw TowerError("level " + std::to_string(lv.size()) + " is missing");
        lv.push_back(sh);
    }
    std::vector<std::vector<Word>> ws;
    for (auto& [n, w] : embeds) {
        if (n >= static_cast<int>(lv.size()) - 1) {
            const Token& t = embed_pos.at(n);
            throw ParseError(t.line, t.col,
                             "embedding " + std::to_string(n) + " -> " + std::to_string(n + 1) +
                                 " refers to an undefined level");
        }
        if (n != static_cast<int>(ws.size()))
            throw TowerError("embedding " + std::to_string(ws.size()) + " -> " +
                             std::to_string(ws.size() + 1) + " is missing");
        ws.push_back(w);
    }
    if (ws.size() + 1 != lv.size())
        throw TowerError("embedding " + std::to_string(ws.size()) + " -> " +
                         std::to_string(ws.size() + 1) + " is missing");
    return {TowerSpec(std::move(lv), std::move(ws), cont, spawn, name), std::move(actions)};
}

TowerSpec parse_tower(const std::string& text, const std::string& name)
{
    return parse_document(text, name).tower;
}

std::string to_text(const std::vector<Word>& words, const std::string& indent)
{
    std::ostringstream os;
    for (size_t t = 0; t < words.size(); ++t) {
        os << indent << "target " << t << " :";
        for (const auto& l : words[t])
            os << " (" << l.summand << ',' << l.pos << ')';
        os << '\n';
    }
    return os.str();
}

std::string to_text(const TowerSpec& tower)
{
    std::ostringstream os;
    const auto& lv = tower.explicit_shapes();
    for (size_t n = 0; n < lv.size(); ++n) {
        os << "level " << n << " = [";
        for (size_t i = 0; i < lv[n].sizes.size(); ++i)
            os << (i ? "," : "") << lv[n].sizes[i];
        os << "]\n";
    }
    const auto& ws = tower.explicit_words();
    for (size_t n = 0; n < ws.size(); ++n)
        os << "embed " << n << " -> " << n + 1 << " {\n" << to_text(ws[n], "  ") << "}\n";
    if (tower.continuation() == Continuation::Repeat)
        os << "repeat\n";
    else if (tower.continuation() == Continuation::Spawn)
        os << "spawn " << tower.spawn_generators() << '\n';
    return os.str();
}

} // namespace limitalg
