#include "cpnet/format.hpp"

#include <cctype>
#include <set>
#include <vector>

namespace cpnet {

ParseError::ParseError(SourceLocation where, const std::string& message)
    : Error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      where_(where),
      detail_(message) {}

namespace {

enum class Tok { ident, colon, comma, dash, equals, amp, greater, tilde, end };

struct Token {
	Tok kind;
	std::string text;
	SourceLocation at;
};

const char* describe(Tok kind) {
	switch (kind) {
	case Tok::ident: return "identifier";
	case Tok::colon: return "':'";
	case Tok::comma: return "','";
	case Tok::dash: return "'-'";
	case Tok::equals: return "'='";
	case Tok::amp: return "'&'";
	case Tok::greater: return "'>'";
	case Tok::tilde: return "'~'";
	case Tok::end: return "end of line";
	}
	return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view line, int lineno) {
	std::vector<Token> out;
	std::size_t i = 0;
	while (i < line.size()) {
		const char c = line[i];
		const SourceLocation at{lineno, static_cast<int>(i) + 1};
		if (c == '#') break;
		if (c == ' ' || c == '\t' || c == '\r') {
			++i;
			continue;
		}
		if (ident_start(c)) {
			std::size_t j = i;
			while (j < line.size() && ident_char(line[j])) ++j;
			out.push_back({Tok::ident, std::string(line.substr(i, j - i)), at});
			i = j;
			continue;
		}
		Tok kind;
		switch (c) {
		case ':': kind = Tok::colon; break;
		case ',': kind = Tok::comma; break;
		case '-': kind = Tok::dash; break;
		case '=': kind = Tok::equals; break;
		case '&': kind = Tok::amp; break;
		case '>': kind = Tok::greater; break;
		case '~': kind = Tok::tilde; break;
		default: {
			const unsigned char u = static_cast<unsigned char>(c);
			if (std::isdigit(u)) throw ParseError(at, "identifier cannot start with a digit");
			if (std::ispunct(u)) throw ParseError(at, std::string("unknown operator '") + c + "'");
			throw ParseError(at, "unexpected character");
		}
		}
		out.push_back({kind, std::string(1, c), at});
		++i;
	}
	out.push_back({Tok::end, "", SourceLocation{lineno, static_cast<int>(line.size()) + 1}});
	return out;
}

class LineParser {
public:
	explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

	const Token& peek() const { return toks_[pos_]; }
	const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

	const Token& expect(Tok kind) {
		const Token& t = peek();
		if (t.kind != kind) {
			std::string got = t.kind == Tok::ident ? "'" + t.text + "'" : describe(t.kind);
			throw ParseError(t.at, std::string("expected ") + describe(kind) + ", found " + got);
		}
		return take();
	}

	void expect_end() { expect(Tok::end); }

private:
	std::vector<Token> toks_;
	std::size_t pos_ = 0;
};

class DocumentParser {
public:
	CPNet run(std::string_view text) {
		int lineno = 0;
		std::size_t start = 0;
		while (start <= text.size()) {
			std::size_t nl = text.find('\n', start);
			if (nl == std::string_view::npos) nl = text.size();
			++lineno;
			line(text.substr(start, nl - start), lineno);
			start = nl + 1;
		}
		return std::move(net_);
	}

private:
	void line(std::string_view raw, int lineno) {
		LineParser p(tokenize(raw, lineno));
		const Token& first = p.peek();
		if (first.kind == Tok::end) return;
		if (first.kind == Tok::dash) return relation(p);
		if (first.kind == Tok::ident && first.text == "feature") return feature(p);
		if (first.kind == Tok::ident && first.text == "cpt") return cpt(p);
		throw ParseError(first.at, "expected 'feature', 'cpt' or a '-' relation line");
	}

	void feature(LineParser& p) {
		const Token kw = p.take();
		if (in_cpts_) throw ParseError(kw.at, "feature declaration after a cpt block");
		const Token name = p.expect(Tok::ident);
		if (net_.has_feature(name.text))
			throw ParseError(name.at, "duplicate feature '" + name.text + "'");
		p.expect(Tok::colon);
		std::vector<Value> domain;
		std::set<Value> seen;
		while (true) {
			const Token v = p.expect(Tok::ident);
			if (!seen.insert(v.text).second)
				throw ParseError(v.at, "duplicate value '" + v.text + "' in domain of '" + name.text + "'");
			domain.push_back(v.text);
			if (p.peek().kind != Tok::comma) break;
			p.take();
		}
		p.expect_end();
		net_.add_feature(name.text, std::move(domain));
	}

	void cpt(LineParser& p) {
		p.take();
		const Token name = p.expect(Tok::ident);
		if (!net_.has_feature(name.text))
			throw ParseError(name.at, "cpt for undeclared feature '" + name.text + "'");
		if (!opened_.insert(name.text).second)
			throw ParseError(name.at, "duplicate cpt block for '" + name.text + "'");
		p.expect(Tok::colon);
		p.expect_end();
		in_cpts_ = true;
		current_ = name.text;
	}

	void relation(LineParser& p) {
		const Token dash = p.take();
		if (current_.empty()) throw ParseError(dash.at, "relation line outside a cpt block");
		const Feature& owner = net_.feature(current_);

		PreferenceRelation rel;
		const Token head = p.expect(Tok::ident);
		if (head.text == "T" && p.peek().kind != Tok::equals) {
			// empty condition
		} else {
			assignment(p, head, owner, rel.condition);
			while (p.peek().kind == Tok::amp) {
				p.take();
				assignment(p, p.expect(Tok::ident), owner, rel.condition);
			}
		}
		p.expect(Tok::colon);

		std::set<Value> seen;
		rel.levels.emplace_back();
		while (true) {
			const Token v = p.expect(Tok::ident);
			if (!owner.has_value(v.text))
				throw ParseError(v.at, "value '" + v.text + "' is not in the domain of '" + owner.name + "'");
			if (!seen.insert(v.text).second)
				throw ParseError(v.at, "duplicate value '" + v.text + "' in relation");
			rel.levels.back().insert(v.text);
			const Tok next = p.peek().kind;
			if (next == Tok::tilde) {
				p.take();
			} else if (next == Tok::greater) {
				p.take();
				rel.levels.emplace_back();
			} else {
				break;
			}
		}
		p.expect_end();
		net_.add_relation(owner.name, std::move(rel));
	}

	void assignment(LineParser& p, const Token& feature, const Feature& owner, Condition& cond) {
		p.expect(Tok::equals);
		const Token value = p.expect(Tok::ident);
		if (feature.text == owner.name)
			throw ParseError(feature.at, "condition assigns the owning feature '" + owner.name + "'");
		if (!net_.has_feature(feature.text))
			throw ParseError(feature.at, "unknown feature '" + feature.text + "' in condition");
		if (!net_.feature(feature.text).has_value(value.text))
			throw ParseError(value.at, "value '" + value.text + "' is not in the domain of '" +
						       feature.text + "'");
		if (cond.assigns(feature.text))
			throw ParseError(feature.at, "feature '" + feature.text + "' assigned twice in condition");
		cond.assign(feature.text, value.text);
	}

	CPNet net_;
	bool in_cpts_ = false;
	std::string current_;
	std::set<std::string> opened_;
};

}  // namespace

CPNet parse(std::string_view text) { return DocumentParser{}.run(text); }

std::string serialize(const CPNet& net) {
	require_valid(net);
	std::string out = "# cpn\n";
	for (const auto& f : net.features()) {
		out += "feature " + f.name + ":";
		for (std::size_t i = 0; i < f.domain.size(); ++i) out += (i ? ", " : " ") + f.domain[i];
		out += '\n';
	}
	for (const auto& cpt : net.cpts()) {
		if (cpt.relations.empty()) continue;
		out += "\ncpt " + cpt.owner + ":\n";
		for (const auto& rel : cpt.relations) out += "- " + rel.str() + "\n";
	}
	return out;
}

}  // namespace cpnet
