#include "loewy/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "loewy/errors.hpp"

namespace loewy {

std::string kind_name(DiagramKind k) {
    switch (k) {
        case DiagramKind::radical: return "radical";
        case DiagramKind::socle: return "socle";
        case DiagramKind::parity: return "parity";
        case DiagramKind::filtration: return "filtration";
    }
    return "?";
}

DiagramKind kind_from_name(const std::string& s) {
    if (s == "radical") return DiagramKind::radical;
    if (s == "socle") return DiagramKind::socle;
    if (s == "parity") return DiagramKind::parity;
    if (s == "filtration") return DiagramKind::filtration;
    throw DomainError("unknown diagram kind '" + s + "'");
}

namespace {

void accumulate(Layer& into, const Layer& from, int times = 1) {
    for (auto& [k, m] : from) into[k] += m * times;
}

}  // namespace

Layer LayerDiagram::total() const {
    Layer t;
    for (auto& l : layers) accumulate(t, l);
    for (auto& [i, bs] : blocks)
        for (auto& b : bs)
            for (auto& l : b.layers) accumulate(t, l);
    return t;
}

LayerDiagram LayerDiagram::reversed() const {
    LayerDiagram r = *this;
    std::reverse(r.layers.begin(), r.layers.end());
    r.blocks.clear();
    int n = loewy_length();
    for (auto& [i, bs] : blocks) r.blocks[n - 1 - i] = bs;
    return r;
}

bool LayerDiagram::palindromic() const {
    int n = loewy_length();
    for (int i = 0; i < n; ++i)
        if (layers[i] != layers[n - 1 - i]) return false;
    return true;
}

Layer FiltrationDiagram::total() const {
    Layer t;
    for (auto& g : groups)
        for (auto& b : g) t[b] += 1;
    return t;
}

RigidityReport rigidity_check(const LayerDiagram& radical, const LayerDiagram& socle) {
    if (radical.total() != socle.total())
        throw DomainError("radical and socle diagrams have different composition factors");
    RigidityReport r;
    r.loewy_length = radical.loewy_length();
    if (radical.layers == socle.layers) return r;
    r.is_rigid = false;
    if (radical.loewy_length() != socle.loewy_length()) {
        r.witness = RigidityWitness{"", -1, -1, "radical and socle lengths differ"};
        return r;
    }
    for (int i = 0; i < radical.loewy_length(); ++i) {
        for (auto& [f, m] : radical.layers[i]) {
            auto it = socle.layers[i].find(f);
            int ms = it == socle.layers[i].end() ? 0 : it->second;
            if (m <= ms) continue;
            RigidityWitness w{f, i, -1, ""};
            for (int j = 0; j < socle.loewy_length(); ++j)
                if (j != i && socle.layers[j].count(f)) {
                    w.socle_layer = j;
                    break;
                }
            std::ostringstream os;
            os << "L(" << f << ") lies in radical layer " << i << " but socle layer " << w.socle_layer;
            w.detail = os.str();
            r.witness = w;
            return r;
        }
    }
    return r;
}

namespace {

struct LabelKey {
    bool numeric;
    long number;
    int primes;
    std::string raw;
};

LabelKey key_of(const std::string& s) {
    size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 0) return {false, 0, 0, s};
    int primes = 0;
    for (size_t j = i; j < s.size(); ++j)
        if (s[j] == '\'') ++primes;
    return {true, std::stol(s.substr(0, i)), primes, s};
}

}  // namespace

bool label_before(const std::string& a, const std::string& b) {
    LabelKey ka = key_of(a), kb = key_of(b);
    if (ka.numeric != kb.numeric) return ka.numeric;
    if (ka.numeric && ka.number != kb.number) return ka.number > kb.number;
    if (ka.primes != kb.primes) return ka.primes < kb.primes;
    return ka.raw < kb.raw;
}

std::vector<std::string> expand_layer(const Layer& layer) {
    std::vector<std::string> keys;
    for (auto& [k, m] : layer) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), label_before);
    std::vector<std::string> out;
    for (auto& k : keys)
        for (int i = 0; i < layer.at(k); ++i) out.push_back(k);
    return out;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i];
    }
    return s;
}

std::string boxed(const std::string& title, const std::vector<std::string>& rows) {
    size_t w = 0;
    for (auto& r : rows) w = std::max(w, r.size());
    std::string rule = "+" + std::string(w + 2, '-') + "+\n";
    std::string out = title.empty() ? "" : title + "\n";
    out += rule;
    for (auto& r : rows) {
        size_t pad = w - r.size();
        out += "| " + std::string(pad / 2, ' ') + r + std::string(pad - pad / 2, ' ') + " |\n";
        out += rule;
    }
    return out;
}

std::string block_row(const Block& b) {
    std::vector<std::string> parts;
    for (auto& l : b.layers) parts.push_back(join(expand_layer(l), "|"));
    return b.name + " = [" + join(parts, " / ") + "]";
}

}  // namespace

std::string render_text(const LayerDiagram& d) {
    std::vector<std::string> rows;
    for (int i = 0; i < d.loewy_length(); ++i) {
        auto labels = expand_layer(d.layers[i]);
        if (auto it = d.blocks.find(i); it != d.blocks.end())
            for (auto& b : it->second) labels.push_back(b.name);
        rows.push_back(join(labels, " | "));
    }
    std::string out = boxed(d.module.empty() ? kind_name(d.kind) : d.module + " " + kind_name(d.kind), rows);
    for (auto& [i, bs] : d.blocks)
        for (auto& b : bs) out += block_row(b) + "\n";
    return out;
}

std::string render_text(const FiltrationDiagram& f) {
    std::vector<std::string> rows;
    std::string sym = f.tag == 'D' ? "D" : "N";
    for (auto g : f.groups) {
        std::sort(g.begin(), g.end(), label_before);
        std::vector<std::string> cells;
        for (auto& b : g) cells.push_back(sym + b);
        rows.push_back(join(cells, " : "));
    }
    return boxed(f.module + (f.tag == 'D' ? " Delta-filtration" : " nabla-filtration"), rows);
}

std::string render_latex(const LayerDiagram& d) {
    auto cell = [](const Layer& l) {
        std::vector<std::string> keys;
        for (auto& [k, m] : l) keys.push_back(k);
        std::sort(keys.begin(), keys.end(), label_before);
        std::vector<std::string> parts;
        for (auto& k : keys) {
            int m = l.at(k);
            parts.push_back(m == 1 ? k : k + "^{\\oplus " + std::to_string(m) + "}");
        }
        return parts;
    };
    std::ostringstream os;
    os << "\\begin{tabular}{|c|}\n\\hline\n";
    for (int i = 0; i < d.loewy_length(); ++i) {
        auto parts = cell(d.layers[i]);
        if (auto it = d.blocks.find(i); it != d.blocks.end())
            for (auto& b : it->second) parts.push_back(b.name);
        os << "$" << join(parts, " \\mid ") << "$ \\\\\n\\hline\n";
    }
    os << "\\end{tabular}\n";
    for (auto& [i, bs] : d.blocks)
        for (auto& b : bs) {
            std::vector<std::string> rows;
            for (auto& l : b.layers) rows.push_back(join(cell(l), " \\mid "));
            os << "$" << b.name << " = \\left[\\begin{smallmatrix}" << join(rows, " \\\\ ")
               << "\\end{smallmatrix}\\right]$\n";
        }
    return os.str();
}

std::string render_text(const RigidityReport& r) {
    std::ostringstream os;
    os << (r.is_rigid ? "rigid" : "non-rigid") << ", Loewy length " << r.loewy_length << "\n";
    if (r.witness) os << "witness: " << r.witness->detail << "\n";
    return os.str();
}

}  // namespace loewy
