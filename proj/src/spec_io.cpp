#include "minksphere/spec_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace mink {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& key, const std::string& why) {
    std::ostringstream os;
    os << "line " << line << ", key '" << key << "': " << why;
    throw Error(ErrorCode::ParseError, os.str());
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& s, int line, const std::string& key) {
    const std::string t = trim(s);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        fail(line, key, "expected a real number, got '" + t + "'");
    }
    return value;
}

std::vector<double> parse_reals(const std::string& s, char sep, int line,
                                const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(parse_real(item, line, key));
    return out;
}

NormSpec parse_text(const std::string& text, const std::string& base_dir, int depth);

NormSpec load_with_depth(const std::string& path, int depth) {
    if (depth > 16) {
        throw Error(ErrorCode::ParseError, "transform base chain deeper than 16: " + path);
    }
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open spec file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), std::filesystem::path(path).parent_path().string(), depth);
}

NormSpec parse_text(const std::string& text, const std::string& base_dir, int depth) {
    std::map<std::string, Entry> entries;
    std::string lineText;
    int lineNo = 0;
    std::istringstream is(text);
    while (std::getline(is, lineText)) {
        ++lineNo;
        const auto hash = lineText.find('#');
        if (hash != std::string::npos) lineText.erase(hash);
        lineText = trim(lineText);
        if (lineText.empty()) continue;
        const auto eq = lineText.find('=');
        if (eq == std::string::npos) fail(lineNo, lineText, "expected key=value");
        const std::string key = trim(lineText.substr(0, eq));
        if (entries.count(key)) fail(lineNo, key, "duplicate key");
        entries[key] = {trim(lineText.substr(eq + 1)), lineNo};
    }

    auto take = [&](const std::string& key) -> Entry {
        const auto it = entries.find(key);
        if (it == entries.end()) fail(0, key, "required key missing");
        Entry e = it->second;
        entries.erase(it);
        return e;
    };

    const Entry kind = take("kind");
    NormSpec spec;
    if (kind.value == "pnorm") {
        const Entry p = take("p");
        spec = NormSpec::pnorm(parse_real(p.value, p.line, "p"));
    } else if (kind.value == "polygon") {
        const Entry vs = take("vertices");
        std::vector<Vec2> vertices;
        std::string item;
        std::istringstream vss(vs.value);
        while (std::getline(vss, item, ';')) {
            const auto xy = parse_reals(item, ',', vs.line, "vertices");
            if (xy.size() != 2) fail(vs.line, "vertices", "each vertex needs two coordinates");
            vertices.push_back({xy[0], xy[1]});
        }
        spec = NormSpec::polygon(std::move(vertices));
    } else if (kind.value == "lens") {
        const Entry b = take("beta");
        spec = NormSpec::lens(parse_real(b.value, b.line, "beta"));
    } else if (kind.value == "double_lens") {
        spec = NormSpec::double_lens();
    } else if (kind.value == "transform") {
        const Entry base = take("base");
        const Entry mat = take("matrix");
        const auto m = parse_reals(mat.value, ',', mat.line, "matrix");
        if (m.size() != 4) fail(mat.line, "matrix", "expected 4 comma-separated entries");
        std::filesystem::path basePath(base.value);
        if (basePath.is_relative()) basePath = std::filesystem::path(base_dir) / basePath;
        spec = NormSpec::transform(load_with_depth(basePath.string(), depth + 1),
                                   Mat2{m[0], m[1], m[2], m[3]});
    } else {
        fail(kind.line, "kind", "unknown kind '" + kind.value + "'");
    }

    if (!entries.empty()) {
        const auto& extra = *entries.begin();
        fail(extra.second.line, extra.first, "unexpected key for kind '" + kind.value + "'");
    }
    return spec;
}

}  // namespace

NormSpec parse_norm_spec(const std::string& text, const std::string& base_dir) {
    return parse_text(text, base_dir, 0);
}

NormSpec load_norm_spec(const std::string& path) { return load_with_depth(path, 0); }

}  // namespace mink
