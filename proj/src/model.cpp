#include "nilcohom/model.hpp"

#include "nilcohom/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nilcohom {

namespace monomial {

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int swaps = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
        int j = __builtin_ctz(bb);
        swaps += __builtin_popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

int conj_sign(Mask m, int n) { return ((p_degree(m, n) * q_degree(m, n)) & 1) ? -1 : 1; }

namespace {

void subsets(int n, int k, int start, Mask cur, std::vector<Mask>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - k; ++i) subsets(n, k - 1, i + 1, cur | (Mask(1) << i), out);
}

} // namespace

std::vector<Mask> basis(int n, int p, int q) {
    std::vector<Mask> is, js, out;
    if (p < 0 || q < 0 || p > n || q > n) return out;
    subsets(n, p, 0, 0, is);
    subsets(n, q, 0, 0, js);
    for (Mask i : is)
        for (Mask j : js) out.push_back(make(i, j, n));
    return out;
}

std::vector<Mask> basis_total(int n, int k) {
    std::vector<Mask> out;
    for (int p = std::min(k, n); p >= 0; --p) {
        auto b = basis(n, p, k - p);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

std::string str(Mask m, int n) {
    if (m == 0) return "1";
    std::string s;
    for (int g = 0; g < 2 * n; ++g) {
        if (!(m >> g & 1)) continue;
        if (!s.empty()) s += "^";
        s += (g < n ? "p" : "q") + std::to_string(g % n + 1);
    }
    return s;
}

} // namespace monomial

namespace {

void accumulate(std::map<Mask, GaussRational>& acc, Mask m, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

SparseForm to_sparse(const std::map<Mask, GaussRational>& acc) { return {acc.begin(), acc.end()}; }

SparseForm conj_form(const SparseForm& f, int n) {
    std::map<Mask, GaussRational> acc;
    for (const auto& [m, c] : f) accumulate(acc, monomial::conj_mask(m, n), c.conj() * GaussRational(monomial::conj_sign(m, n)));
    return to_sparse(acc);
}

// d of a monomial by the Leibniz rule from generator data.
SparseForm leibniz(Mask m, const std::vector<SparseForm>& gen_d) {
    std::map<Mask, GaussRational> acc;
    int j = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++j) {
        int g = __builtin_ctz(rest);
        Mask prefix = m & ((Mask(1) << g) - 1);
        Mask suffix = m & ~((Mask(2) << g) - 1);
        for (const auto& [m2, c] : gen_d[g]) {
            int s1 = monomial::wedge_sign(prefix, m2);
            if (!s1) continue;
            int s2 = monomial::wedge_sign(prefix | m2, suffix);
            if (!s2) continue;
            int s = s1 * s2 * ((j & 1) ? -1 : 1);
            accumulate(acc, prefix | m2 | suffix, c * GaussRational(s));
        }
    }
    return to_sparse(acc);
}

SparseForm apply_d(const SparseForm& f, const std::vector<SparseForm>& gen_d) {
    std::map<Mask, GaussRational> acc;
    for (const auto& [m, c] : f)
        for (const auto& [m2, c2] : leibniz(m, gen_d)) accumulate(acc, m2, c * c2);
    return to_sparse(acc);
}

std::vector<SparseForm> generator_table(const ModelData& data) {
    int n = data.n;
    std::vector<SparseForm> gen(2 * n);
    for (const auto& [k, terms] : data.d) gen[k] = expand_terms(terms, n);
    for (int k = 0; k < n; ++k) gen[n + k] = conj_form(gen[k], n);
    return gen;
}

void check_dim(int n) {
    if (n < 1 || n > kMaxDim)
        throw ModelError("complex dimension must be between 1 and " + std::to_string(kMaxDim) + ", got " + std::to_string(n));
}

} // namespace

SparseForm expand_terms(const std::vector<StructureTerm>& terms, int n) {
    std::map<Mask, GaussRational> acc;
    for (const auto& t : terms) {
        Mask m = 0;
        int sign = 1;
        for (const auto& f : t.factors) {
            if (f.index < 0 || f.index >= n) throw ModelError("generator index out of range");
            Mask b = Mask(1) << monomial::generator_bit(f.index, f.conjugated, n);
            int s = monomial::wedge_sign(m, b);
            if (!s) throw ModelError("repeated factor " + monomial::str(b, n) + " in structure term");
            sign *= s;
            m |= b;
        }
        accumulate(acc, m, t.coefficient * GaussRational(sign));
    }
    return to_sparse(acc);
}

IntegrabilityReport check_integrability(const ModelData& data) {
    check_dim(data.n);
    int n = data.n;
    auto gen = generator_table(data);
    IntegrabilityReport rep;
    for (int k = 0; k < n; ++k) {
        GeneratorReport g;
        g.k = k;
        for (const auto& [m, c] : gen[k]) {
            if (monomial::degree(m) != 2) throw ModelError("structure equation for p" + std::to_string(k + 1) + " is not a 2-form");
            int p = monomial::p_degree(m, n);
            (p == 2 ? g.part20 : p == 1 ? g.part11 : g.part02).emplace_back(m, c);
        }
        g.d2_residual = apply_d(gen[k], gen);
        if (!g.part02.empty() || !g.d2_residual.empty()) rep.passed = false;
        rep.generators.push_back(std::move(g));
    }
    return rep;
}

namespace {

std::string sparse_str(const SparseForm& f, int n) {
    if (f.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : f) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*" + monomial::str(m, n);
    }
    return s;
}

} // namespace

std::string IntegrabilityReport::str(int n) const {
    std::ostringstream os;
    for (const auto& g : generators) {
        os << "p" << g.k + 1 << "\t(2,0)=" << sparse_str(g.part20, n) << "\t(1,1)=" << sparse_str(g.part11, n)
           << "\t(0,2)=" << sparse_str(g.part02, n) << "\td2=" << sparse_str(g.d2_residual, n) << "\n";
    }
    os << (passed ? "pass" : "fail") << "\n";
    return os.str();
}

ComplexModel::ComplexModel(ModelData data) : data_(std::move(data)) {
    IntegrabilityReport rep = check_integrability(data_);
    int n = data_.n;
    for (const auto& g : rep.generators) {
        if (!g.part02.empty())
            throw ModelError("integrability violated: dp" + std::to_string(g.k + 1) + " has (0,2)-component " + sparse_str(g.part02, n));
        if (!g.d2_residual.empty())
            throw ModelError("d^2 != 0 on p" + std::to_string(g.k + 1) + ": residual " + sparse_str(g.d2_residual, n));
    }
    for (auto it = data_.d.begin(); it != data_.d.end();) {
        if (expand_terms(it->second, n).empty())
            it = data_.d.erase(it);
        else
            ++it;
    }
    gen_d_ = generator_table(data_);
    mono_d_.resize(std::size_t(1) << (2 * n));
    for (Mask m = 0; m < mono_d_.size(); ++m) mono_d_[m] = leibniz(m, gen_d_);
}

const QMatrix& ComplexModel::memo(const MemoKey& key, const std::function<QMatrix()>& compute) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return *it->second;
    }
    auto value = std::make_unique<QMatrix>(compute());
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto [it, inserted] = memo_.try_emplace(key, std::move(value));
    return *it->second;
}

ModelPtr make_model(ModelData data) { return std::make_shared<const ComplexModel>(std::move(data)); }

// ---------------------------------------------------------------------------
// model files

namespace {

class LineParser {
public:
    LineParser(const std::string& text, int line, int col0) : s_(text), line_(line), col0_(col0) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col0_ + int(pos_) + 1, what); }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isalpha((unsigned char)s_[pos_])) ++pos_;
        return s_.substr(b, pos_ - b);
    }
    std::string rest() {
        skip_ws();
        std::string r = s_.substr(pos_);
        pos_ = s_.size();
        while (!r.empty() && std::isspace((unsigned char)r.back())) r.pop_back();
        return r;
    }
    bool digit_next() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]);
    }
    long integer() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (b == pos_) fail("expected integer");
        if (pos_ - b > 18) fail("integer too large");
        return std::stol(s_.substr(b, pos_ - b));
    }
    // Unsigned rational "a" or "a/b".
    mpq_class rational() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (b == pos_) fail("expected number");
        std::string num = s_.substr(b, pos_ - b);
        std::string den = "1";
        if (accept('/')) {
            skip_ws();
            std::size_t c = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            if (c == pos_) fail("expected denominator");
            den = s_.substr(c, pos_ - c);
            if (mpz_class(den) == 0) fail("zero denominator");
        }
        mpq_class q{mpz_class(num), mpz_class(den)};
        q.canonicalize();
        return q;
    }
    // "p<k>" or "q<k>" at the cursor.
    bool factor_next() {
        skip_ws();
        return pos_ + 1 < s_.size() && (s_[pos_] == 'p' || s_[pos_] == 'q') && std::isdigit((unsigned char)s_[pos_ + 1]);
    }
    Factor factor(int n) {
        skip_ws();
        if (!factor_next()) fail("expected factor p<i> or q<i>");
        bool conj = s_[pos_] == 'q';
        ++pos_;
        std::size_t at = pos_;
        long i = integer();
        if (i < 1 || i > n) {
            pos_ = at;
            fail("generator index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
        }
        return {int(i - 1), conj};
    }
    // Imaginary unit suffix after a number.
    bool imaginary_suffix() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 == s_.size() || !std::isalnum((unsigned char)s_[pos_ + 1]))) {
            ++pos_;
            return true;
        }
        return false;
    }
    // Lookahead: "(+|-) number i" follows.
    bool imaginary_part_next() {
        std::size_t save = pos_;
        bool ok = false;
        if (accept('+') || accept('-')) {
            if (digit_next()) {
                rational();
                ok = imaginary_suffix();
            } else {
                ok = imaginary_suffix();
            }
        }
        pos_ = save;
        return ok;
    }
    GaussRational coefficient() {
        if (accept('(')) {
            mpq_class sign = accept('-') ? -1 : (accept('+'), 1);
            GaussRational c = coefficient_body(sign);
            expect(')');
            return c;
        }
        return coefficient_body(1);
    }
    // The sign applies to the leading component only.
    GaussRational coefficient_body(const mpq_class& sign) {
        if (imaginary_suffix()) return {0, sign};
        mpq_class a = sign * rational();
        if (imaginary_suffix()) return {0, a};
        if (!imaginary_part_next()) return {a, 0};
        mpq_class s = accept('+') ? 1 : (expect('-'), -1);
        mpq_class b = 1;
        if (digit_next()) b = rational();
        if (!imaginary_suffix()) fail("expected 'i'");
        return {a, s * b};
    }
    StructureTerm term(int n, mpq_class sign) {
        StructureTerm t;
        t.coefficient = GaussRational(sign);
        if (!factor_next()) {
            t.coefficient = t.coefficient * coefficient();
            expect('*');
        }
        std::size_t at = pos_;
        Factor a = factor(n);
        expect('^');
        Factor b = factor(n);
        if (a == b) {
            pos_ = at;
            fail("repeated factor in term");
        }
        t.factors = {a, b};
        if (t.coefficient.is_zero()) {
            pos_ = at;
            fail("zero coefficient");
        }
        return t;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int line_;
    int col0_;
};

std::string coefficient_text(const GaussRational& c) {
    if (c.is_real()) return c.re().get_str();
    return "(" + c.str() + ")";
}

} // namespace

ModelData parse_model_data(const std::string& text) {
    ModelData data;
    bool have_dim = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::size_t start = 0;
        while (start <= raw.size()) {
            std::size_t end = raw.find(';', start);
            if (end == std::string::npos) end = raw.size();
            std::string stmt = raw.substr(start, end - start);
            LineParser lp(stmt, line, int(start));
            if (!lp.at_end()) {
                std::string kw = lp.word();
                if (kw == "dim") {
                    if (have_dim) lp.fail("duplicate dim");
                    long n = lp.integer();
                    if (n < 1 || n > kMaxDim) lp.fail("dim must be between 1 and " + std::to_string(kMaxDim));
                    data.n = int(n);
                    have_dim = true;
                } else if (kw == "name") {
                    data.name = lp.rest();
                    if (data.name.empty()) lp.fail("empty name");
                } else if (kw == "d") {
                    if (!have_dim) lp.fail("d-line before dim");
                    Factor lhs = lp.factor(data.n);
                    if (lhs.conjugated) lp.fail("d-lines define d p<k>; conjugates are implied");
                    if (data.d.count(lhs.index)) lp.fail("duplicate d-line for p" + std::to_string(lhs.index + 1));
                    lp.expect('=');
                    std::vector<StructureTerm> terms;
                    mpq_class sign = 1;
                    if (lp.accept('-')) sign = -1;
                    else lp.accept('+');
                    terms.push_back(lp.term(data.n, sign));
                    while (!lp.at_end()) {
                        if (lp.accept('+')) sign = 1;
                        else if (lp.accept('-')) sign = -1;
                        else lp.fail("expected '+' or '-'");
                        terms.push_back(lp.term(data.n, sign));
                    }
                    data.d[lhs.index] = std::move(terms);
                } else {
                    lp.fail(kw.empty() ? "unexpected character" : "unknown keyword '" + kw + "'");
                }
                if (!lp.at_end()) lp.fail("trailing input");
            }
            start = end + 1;
        }
    }
    if (!have_dim) throw ParseError(line ? line : 1, 1, "missing 'dim <n>'");
    return data;
}

ModelPtr parse_model(const std::string& text) { return make_model(parse_model_data(text)); }

std::string serialize_model(const ModelData& data) {
    std::ostringstream os;
    os << "dim " << data.n << "\n";
    if (!data.name.empty()) os << "name " << data.name << "\n";
    for (const auto& [k, terms] : data.d) {
        SparseForm f = expand_terms(terms, data.n);
        if (f.empty()) continue;
        os << "d p" << k + 1 << " =";
        bool first = true;
        for (const auto& [m, c] : f) {
            std::string mono = monomial::str(m, data.n);
            GaussRational v = c;
            if (v.is_real()) {
                bool neg = sgn(v.re()) < 0;
                mpq_class a = abs(v.re());
                os << (first ? (neg ? " -" : " ") : (neg ? " - " : " + "));
                if (a != 1) os << a.get_str() << " * ";
            } else {
                os << (first ? " " : " + ") << coefficient_text(v) << " * ";
            }
            os << mono;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

std::string serialize_model(const ComplexModel& m) { return serialize_model(m.data()); }

// ---------------------------------------------------------------------------
// catalog

namespace {

const std::map<std::string, std::string>& builtin_models() {
    static const std::map<std::string, std::string> models = {
        {"iwasawa3", "dim 3\nname iwasawa3\nd p3 = -p1^p2\n"},
        {"torus1", "dim 1\nname torus1\n"},
        {"torus2", "dim 2\nname torus2\n"},
        {"torus3", "dim 3\nname torus3\n"},
        {"torus4", "dim 4\nname torus4\n"},
        {"kodaira-thurston", "dim 2\nname kodaira-thurston\nd p2 = p1^q1\n"},
    };
    return models;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ModelError("cannot read model file " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : builtin_models()) v.push_back(k);
        return v;
    }();
    return names;
}

ModelPtr catalog(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, ModelPtr> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(name);
        if (it != cache.end()) return it->second;
    }
    ModelPtr m;
    auto b = builtin_models().find(name);
    if (b != builtin_models().end()) {
        m = parse_model(b->second);
    } else {
        const char* dir = std::getenv("NILCOHOM_CATALOG_DIR");
        std::filesystem::path p = dir ? std::filesystem::path(dir) / (name + ".model") : std::filesystem::path();
        if (!dir || !std::filesystem::exists(p)) throw ModelError("unknown catalog model '" + name + "'");
        ModelData data = parse_model_data(read_file(p));
        if (data.name.empty()) data.name = name;
        m = make_model(std::move(data));
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(name, m);
    return m;
}

ModelPtr load_model(const std::string& source) {
    if (std::filesystem::is_regular_file(source)) {
        ModelData data = parse_model_data(read_file(source));
        if (data.name.empty()) data.name = std::filesystem::path(source).stem().string();
        return make_model(std::move(data));
    }
    return catalog(source);
}

// ---------------------------------------------------------------------------

std::string frame_label(int g, int n) { return (g < n ? "Z" : "Zb") + std::to_string(g % n + 1); }

std::vector<BracketEntry> frame_structure(const ComplexModel& m) {
    int N = m.generators();
    std::map<std::pair<int, int>, std::map<int, GaussRational>> acc;
    for (int k = 0; k < N; ++k) {
        for (const auto& [mask, c] : m.d_generator(k)) {
            int a = __builtin_ctz(mask);
            int b = 31 - __builtin_clz(mask);
            auto& v = acc[{a, b}][k];
            v -= c;
        }
    }
    std::vector<BracketEntry> out;
    for (auto& [ab, vals] : acc) {
        BracketEntry e{ab.first, ab.second, {}};
        for (auto& [k, c] : vals)
            if (!c.is_zero()) e.value.emplace_back(k, c);
        if (!e.value.empty()) out.push_back(std::move(e));
    }
    return out;
}

} // namespace nilcohom
