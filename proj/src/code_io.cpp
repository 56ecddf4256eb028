#include "symeq/code_io.hpp"

#include <fstream>
#include <sstream>

#include "symeq/error.hpp"

namespace symeq {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<long long> integers(const std::string& line, std::size_t lineno) {
    std::istringstream in(line);
    std::vector<long long> values;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            fail(lineno, "expected an integer, got '" + token + "'");
        }
        if (used != token.size()) fail(lineno, "expected an integer, got '" + token + "'");
        values.push_back(v);
    }
    return values;
}

}  // namespace

Code parse_code(std::string_view text, std::string fallback_id) {
    std::string id = std::move(fallback_id);
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    long long n = 0, q = 0, m = 0;
    std::vector<Symbol> symbols;
    std::size_t words = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = trim(std::string_view(line).substr(1));
            if (body.rfind("id=", 0) == 0) id = trim(std::string_view(body).substr(3));
            continue;
        }
        auto values = integers(line, lineno);
        if (!have_header) {
            if (values.size() != 3) fail(lineno, "header must be 'n q M'");
            n = values[0];
            q = values[1];
            m = values[2];
            if (n < 1 || q < 1 || q > kMaxAlphabet || m < 1) fail(lineno, "invalid header values");
            symbols.reserve(static_cast<std::size_t>(n * m));
            have_header = true;
            continue;
        }
        if (words == static_cast<std::size_t>(m)) fail(lineno, "more codewords than announced");
        if (static_cast<long long>(values.size()) != n)
            fail(lineno, "codeword has " + std::to_string(values.size()) + " symbols, expected " +
                             std::to_string(n));
        for (long long v : values) {
            if (v < 0 || v >= q) fail(lineno, "symbol " + std::to_string(v) + " outside [0,q)");
            symbols.push_back(static_cast<Symbol>(v));
        }
        ++words;
    }
    if (!have_header) throw Error(ErrorCode::parse, "missing 'n q M' header");
    if (words != static_cast<std::size_t>(m))
        throw Error(ErrorCode::parse,
                    "expected " + std::to_string(m) + " codewords, found " + std::to_string(words));
    return Code(static_cast<int>(n), static_cast<int>(q), std::move(symbols), std::move(id));
}

std::string format_code(const Code& code, const std::vector<std::string>& comments) {
    std::string out;
    if (!code.id().empty()) out += "# id=" + code.id() + "\n";
    for (const auto& c : comments) out += "# " + c + "\n";
    out += std::to_string(code.length()) + " " + std::to_string(code.alphabet()) + " " +
           std::to_string(code.size()) + "\n";
    for (std::size_t w = 0; w < code.size(); ++w) {
        auto word = code.word(w);
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(int{word[i]});
        }
        out += '\n';
    }
    return out;
}

Code read_code(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_code(buf.str(), path.stem().string());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void write_code(const Code& code, const std::filesystem::path& path,
                const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out << format_code(code, comments);
    if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace symeq
