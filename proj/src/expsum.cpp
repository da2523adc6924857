#include "expcond/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace expcond {

namespace {

constexpr double kPi = 3.14159265358979323846;

Rat factorial_rat(int n) {
    Rat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

ExpSum::ExpSum(int n, std::vector<ExpTerm> terms, bool two_pi_scaled)
    : n_(n), terms_(std::move(terms)), two_pi_(two_pi_scaled) {
    if (n_ <= 0) throw std::invalid_argument("dimension must be positive");
    for (const ExpTerm& t : terms_) {
        if (static_cast<int>(t.exponent.size()) != 2 * n_)
            throw std::invalid_argument("exponent needs 2n coordinates");
        if (t.coeff.is_zero()) throw std::invalid_argument("zero coefficient");
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const ExpTerm& a, const ExpTerm& b) { return lex_less(a.exponent, b.exponent); });
    std::vector<ExpTerm> merged;
    for (ExpTerm& t : terms_) {
        if (!merged.empty() && merged.back().exponent == t.exponent) {
            merged.back().coeff.re += t.coeff.re;
            merged.back().coeff.im += t.coeff.im;
        } else {
            merged.push_back(std::move(t));
        }
    }
    terms_.clear();
    for (ExpTerm& t : merged)
        if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
    if (terms_.empty()) throw std::invalid_argument("exponential sum is identically zero");
}

ExpSum ExpSum::times_character(const RatVec& exponent) const {
    std::vector<ExpTerm> ts = terms_;
    for (ExpTerm& t : ts) t.exponent = vec_add(t.exponent, exponent);
    return ExpSum(n_, std::move(ts), two_pi_);
}

ExpSum ExpSum::dilated(const Rat& t) const {
    if (t <= 0) throw std::invalid_argument("dilation factor must be positive");
    std::vector<ExpTerm> ts = terms_;
    for (ExpTerm& e : ts) e.exponent = vec_scale(t, e.exponent);
    return ExpSum(n_, std::move(ts), two_pi_);
}

// ---------------------------------------------------------------------------
// expression parser

namespace {

struct PiRat {  // (re + i im) * pi^power
    Rat re = 0, im = 0;
    int pi_power = 0;
    bool is_zero() const { return re == 0 && im == 0; }
};

PiRat pi_mul(const PiRat& a, const PiRat& b) {
    return PiRat{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, a.pi_power + b.pi_power};
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExpSum parse() {
        skip();
        std::vector<std::pair<PiRat, std::vector<PiRat>>> raw_terms;  // coeff, exponent per var
        int sign = 1;
        if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1 : 1;
        parse_term(raw_terms, sign);
        skip();
        while (pos_ < s_.size()) {
            char c = peek();
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            get();
            parse_term(raw_terms, c == '-' ? -1 : 1);
            skip();
        }

        int n = std::max(max_var_, 1);
        bool any_pi = false, any_plain = false;
        for (auto& [coeff, expvec] : raw_terms) {
            for (PiRat& e : expvec) {
                if (e.is_zero()) continue;
                if (e.pi_power == 0) any_plain = true;
                else if (e.pi_power == 1) any_pi = true;
                else fail("exponent carries pi^2 or higher");
            }
            if (coeff.pi_power != 0) fail("pi is only supported inside exponents");
        }
        if (any_pi && any_plain) fail("cannot mix 2*pi-scaled and plain exponents in one sum");
        bool two_pi = any_pi;

        std::vector<ExpTerm> terms;
        for (auto& [coeff, expvec] : raw_terms) {
            ExpTerm t;
            t.coeff = ComplexRat{coeff.re, coeff.im};
            t.exponent.assign(2 * n, Rat(0));
            for (int j = 0; j < n && j < static_cast<int>(expvec.size()); ++j) {
                Rat re = expvec[j].re, im = expvec[j].im;
                if (two_pi && !expvec[j].is_zero()) {
                    re /= 2;  // exponent stored as 2*pi * vector
                    im /= 2;
                }
                t.exponent[2 * j] = re;
                t.exponent[2 * j + 1] = im;
            }
            terms.push_back(std::move(t));
        }
        return ExpSum(n, std::move(terms), two_pi);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at position " << pos_ << ": " << msg;
        throw std::invalid_argument(os.str());
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (peek() == c) { ++pos_; return true; }
        return false;
    }
    bool eat_word(const std::string& w) {
        skip();
        if (s_.compare(pos_, w.size(), w) == 0) {
            size_t end = pos_ + w.size();
            if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])))) return false;
            pos_ = end;
            return true;
        }
        return false;
    }

    Rat parse_number() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        BigInt num(s_.substr(start, pos_ - start));
        if (eat('/')) {
            skip();
            size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == dstart) fail("expected a denominator");
            BigInt den(s_.substr(dstart, pos_ - dstart));
            if (den == 0) fail("zero denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }

    // scalar factor: number | i | pi | ( scalar sum )
    PiRat parse_factor() {
        skip();
        if (eat('(')) {
            PiRat v = parse_scalar_sum();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (eat_word("pi")) return PiRat{Rat(1), Rat(0), 1};
        if (eat_word("i")) return PiRat{Rat(0), Rat(1), 0};
        return PiRat{parse_number(), Rat(0), 0};
    }

    bool word_ahead(const std::string& w) {
        skip();
        if (s_.compare(pos_, w.size(), w) != 0) return false;
        size_t end = pos_ + w.size();
        return end >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[end]));
    }

    PiRat parse_scalar_product() {
        int sign = 1;
        skip();
        while (peek() == '+' || peek() == '-')
            if (get() == '-') sign = -sign;
        PiRat v = parse_factor();
        skip();
        while (true) {
            if (eat('*')) {
                skip();
                if (is_var_ahead()) { pending_var_ = true; break; }
                if (word_ahead("exp")) break;  // coefficient of an exp factor
                v = pi_mul(v, parse_factor());
                skip();
                continue;
            }
            // implicit product as in "2i" or "2pi"
            if (peek() == 'i' || peek() == 'p') {
                size_t save = pos_;
                if (eat_word("pi")) { v = pi_mul(v, PiRat{Rat(1), Rat(0), 1}); continue; }
                if (eat_word("i")) { v = pi_mul(v, PiRat{Rat(0), Rat(1), 0}); continue; }
                pos_ = save;
            }
            break;
        }
        if (sign < 0) v = pi_mul(v, PiRat{Rat(-1), Rat(0), 0});
        return v;
    }

    PiRat parse_scalar_sum() {
        PiRat total = parse_scalar_product();
        skip();
        while (peek() == '+' || peek() == '-') {
            char op = get();
            PiRat v = parse_scalar_product();
            if (v.pi_power != total.pi_power && !v.is_zero() && !total.is_zero())
                fail("cannot add pi-scaled and plain scalars");
            if (total.is_zero()) total.pi_power = v.pi_power;
            if (op == '-') v = pi_mul(v, PiRat{Rat(-1), Rat(0), 0});
            total.re += v.re;
            total.im += v.im;
        }
        return total;
    }

    bool is_var_ahead() {
        skip();
        return peek() == 'z';
    }

    int parse_var() {
        skip();
        if (get() != 'z') fail("expected a variable z<k>");
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        int idx = (pos_ == start) ? 1 : std::stoi(s_.substr(start, pos_ - start));
        if (idx < 1) fail("variable index must be >= 1");
        max_var_ = std::max(max_var_, idx);
        return idx - 1;
    }

    // linear form in the z variables with scalar coefficients
    std::vector<PiRat> parse_linear_form() {
        std::vector<PiRat> coeffs;
        bool first = true;
        while (true) {
            skip();
            if (!first) {
                if (peek() != '+' && peek() != '-') break;
            }
            int sign = 1;
            skip();
            while (peek() == '+' || peek() == '-')
                if (get() == '-') sign = -sign;
            PiRat c{Rat(1), Rat(0), 0};
            skip();
            pending_var_ = false;
            if (!is_var_ahead()) {
                c = parse_scalar_product();
                skip();
                if (!pending_var_ && peek() != 'z') fail("exponent must be linear in z");
            }
            int var = parse_var();
            if (sign < 0) c = pi_mul(c, PiRat{Rat(-1), Rat(0), 0});
            if (static_cast<int>(coeffs.size()) <= var) coeffs.resize(var + 1);
            if (coeffs[var].is_zero())
                coeffs[var].pi_power = c.pi_power;
            else if (!c.is_zero() && coeffs[var].pi_power != c.pi_power)
                fail("cannot mix pi-scaled and plain coefficients on one variable");
            coeffs[var].re += c.re;
            coeffs[var].im += c.im;
            first = false;
            skip();
        }
        return coeffs;
    }

    void parse_term(std::vector<std::pair<PiRat, std::vector<PiRat>>>& out, int sign) {
        skip();
        PiRat coeff{Rat(sign), Rat(0), 0};
        bool have_exp = false;
        std::vector<PiRat> expvec;

        if (!eat_word("exp")) {
            PiRat c = parse_scalar_product();
            coeff = pi_mul(coeff, c);
            skip();
            if (eat('*')) skip();
            if (eat_word("exp"))
                have_exp = true;
        } else {
            have_exp = true;
        }
        if (have_exp) {
            if (!eat('(')) fail("expected '(' after exp");
            expvec = parse_linear_form();
            if (!eat(')')) fail("expected ')'");
        }
        out.emplace_back(coeff, std::move(expvec));
    }

    const std::string& s_;
    size_t pos_ = 0;
    int max_var_ = 0;
    bool pending_var_ = false;
};

}  // namespace

ExpSum parse_expsum(const std::string& text) { return Parser(text).parse(); }

Polytope newton_polytope(const ExpSum& f) {
    RatMat pts;
    pts.reserve(f.terms().size());
    for (const ExpTerm& t : f.terms()) pts.push_back(t.exponent);
    return Polytope::hull(2 * f.n(), pts);
}

bool is_quasi_algebraic(const ExpSum& f) {
    for (const ExpTerm& t : f.terms())
        for (size_t j = 1; j < t.exponent.size(); j += 2)
            if (t.exponent[j] != 0) return false;
    return true;
}

double ExactScaled::value() const { return coef.value() / std::pow(2.0 * kPi, two_pi_power); }

std::string ExactScaled::str() const {
    if (coef.is_zero()) return "0";
    std::string s = coef.str();
    if (two_pi_power == 1) s += "/(2*pi)";
    else if (two_pi_power > 1) s += "/(2*pi)^" + std::to_string(two_pi_power);
    else if (two_pi_power < 0)
        s += "*(2*pi)^" + std::to_string(-two_pi_power);
    return s;
}

IndexResult intersection_index(const std::vector<ExpSum>& fs, const AngleConfig& cfg) {
    if (fs.empty()) throw std::invalid_argument("empty system");
    const int n = fs[0].n();
    if (static_cast<int>(fs.size()) != n)
        throw std::invalid_argument("need exactly n exponential sums in C^n");
    for (const ExpSum& f : fs)
        if (f.n() != n) throw std::invalid_argument("dimension mismatch");

    std::vector<Polytope> newtons;
    int scaled_args = 0;
    for (const ExpSum& f : fs) {
        newtons.push_back(newton_polytope(f));
        if (f.two_pi_scaled()) ++scaled_args;
    }

    IndexResult out;
    out.complex_rank = complex_rank(newtons);
    out.vanishes_exactly = out.complex_rank < 0;
    out.detail = mixed_pseudovolume(newtons, cfg);

    Rat nfact = factorial_rat(n);
    double factor = rat_to_double(nfact) * std::pow(2.0 * kPi, scaled_args);
    out.value = factor * out.detail.value;
    out.error_bound = factor * out.detail.error_bound;
    if (out.detail.exact_scaled)
        out.exact = ExactScaled{*out.detail.exact_scaled * nfact, n - scaled_args};
    return out;
}

IndexResult weak_density(const std::vector<HypersurfaceClass>& classes, const AngleConfig& cfg) {
    if (classes.empty()) throw std::invalid_argument("empty system");
    const int m = classes[0].newton.ambient_dim();
    if (m % 2 != 0) throw std::invalid_argument("Newton polytopes must live in C^n*");
    const int n = m / 2;
    if (static_cast<int>(classes.size()) != n)
        throw std::invalid_argument("need exactly n hypersurface classes");

    RingElement x = RingElement::from_polytope(classes[0].newton);
    std::vector<Polytope> newtons{classes[0].newton};
    for (size_t i = 1; i < classes.size(); ++i) {
        x = x * RingElement::from_polytope(classes[i].newton);
        newtons.push_back(classes[i].newton);
    }
    PairingValue v = eval_I(VolumeForm::pseudo, x, cfg);

    IndexResult out;
    out.complex_rank = complex_rank(newtons);
    out.vanishes_exactly = out.complex_rank < 0;
    Rat nfact = factorial_rat(n);
    out.value = rat_to_double(nfact) * v.value;
    out.error_bound = rat_to_double(nfact) * v.error_bound;
    return out;
}

LatticeSpec lattice_from_characters(const RatMat& lambdas) {
    if (lambdas.empty()) throw std::invalid_argument("no characters");
    const int n = static_cast<int>(lambdas.size());
    const int m = 2 * n;
    for (const RatVec& l : lambdas)
        if (static_cast<int>(l.size()) != m)
            throw std::invalid_argument("characters need 2n coordinates");

    RatMat M = lambdas;
    for (const RatVec& l : lambdas) M.push_back(complex_rotate(l));
    if (rank_of(M) < m) {
        RatMat kernel = nullspace(M, m);
        std::ostringstream os;
        os << "characters are complex-degenerate: the complex line through (";
        for (size_t i = 0; i < kernel[0].size(); ++i)
            os << (i ? ", " : "") << format_rat(kernel[0][i]);
        os << ") lies in the common real kernel";
        throw std::domain_error(os.str());
    }

    LatticeSpec spec;
    spec.n = n;
    spec.lambdas = lambdas;
    spec.L = Subspace(m, nullspace(lambdas, m));
    for (int q = 0; q < n; ++q) {
        RatVec rhs(m, Rat(0));
        rhs[n + q] = 1;  // Im<mu, lambda_p> = delta_pq, Re<mu, lambda_p> = 0
        auto mu = solve_linear(M, rhs);
        if (!mu) throw std::logic_error("dual basis solve failed");
        spec.mus.push_back(*mu);
    }
    // exponential identity on the lattice generators: <2 pi mu_q, lambda_p>
    // must equal 2 pi i delta, so exp of it is 1
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p) {
            if (dot(spec.mus[q], spec.lambdas[p]) != 0)
                throw std::logic_error("lattice generator fails the exponential identity");
            if (dot(spec.mus[q], complex_rotate(spec.lambdas[p])) != Rat(p == q ? 1 : 0))
                throw std::logic_error("lattice generator fails the exponential identity");
        }
    return spec;
}

LatticeDensity lattice_density(const LatticeSpec& spec) {
    const int m = 2 * spec.n;
    Subspace Lperp = Subspace::span_of(m, spec.lambdas);
    Subspace iL = complex_rotate(spec.L);
    Rat cos_sq = subspace_cosine_sq(Lperp, iL);
    Rat gram_det = determinant(gram(spec.lambdas, spec.lambdas));
    LatticeDensity out;
    out.exact = ExactScaled{SqrtRat(Rat(1), cos_sq * gram_det), spec.n};
    out.value = out.exact.value();
    return out;
}

long count_zeros_disk(const ExpSum& f, double radius, const ZeroCountConfig& cfg) {
    if (f.n() != 1) throw std::invalid_argument("zero counting works in one variable only");
    using C = std::complex<double>;
    double scale = f.two_pi_scaled() ? 2.0 * kPi : 1.0;
    std::vector<C> coeffs, lambdas;
    double abs_sum = 0;
    for (const ExpTerm& t : f.terms()) {
        coeffs.emplace_back(rat_to_double(t.coeff.re), rat_to_double(t.coeff.im));
        lambdas.emplace_back(scale * rat_to_double(t.exponent[0]),
                             scale * rat_to_double(t.exponent[1]));
        abs_sum += std::abs(coeffs.back());
    }

    double R = radius;
    for (int attempt = 0; attempt <= cfg.max_radius_retries; ++attempt) {
        // f scaled by exp(-max Re(lambda z)) to avoid overflow
        auto eval = [&](double theta) -> std::pair<C, double> {
            C z = std::polar(R, theta);
            double mx = 0;
            for (size_t k = 0; k < lambdas.size(); ++k) mx = std::max(mx, (lambdas[k] * z).real());
            C val = 0;
            double mag = 0;
            for (size_t k = 0; k < lambdas.size(); ++k) {
                C w = lambdas[k] * z;
                C term = coeffs[k] * std::exp(C(w.real() - mx, w.imag()));
                val += term;
                mag += std::abs(term);
            }
            return {val, mag};
        };

        double max_rate = 0;
        for (const C& l : lambdas) max_rate = std::max(max_rate, std::abs(l));
        int initial = std::max(512, static_cast<int>(8.0 * max_rate * R));

        bool too_small = false;
        double total_arg = 0;
        // recursive phase tracking over [theta_a, theta_b]
        struct Seg {
            double ta, tb;
            C fa, fb;
            int depth;
        };
        std::vector<Seg> stack;
        std::vector<std::pair<C, double>> samples(initial + 1);
        for (int i = 0; i <= initial; ++i) samples[i] = eval(2.0 * kPi * i / initial);
        for (int i = 0; i < initial && !too_small; ++i) {
            stack.push_back(Seg{2.0 * kPi * i / initial, 2.0 * kPi * (i + 1) / initial,
                                samples[i].first, samples[i + 1].first, 0});
            while (!stack.empty()) {
                Seg s = stack.back();
                stack.pop_back();
                if (std::abs(s.fa) < cfg.min_modulus * abs_sum ||
                    std::abs(s.fb) < cfg.min_modulus * abs_sum) {
                    too_small = true;
                    break;
                }
                double d = std::arg(s.fb / s.fa);
                if (std::abs(d) <= cfg.max_step || s.depth >= cfg.max_depth) {
                    total_arg += d;
                    continue;
                }
                double tm = 0.5 * (s.ta + s.tb);
                C fm = eval(tm).first;
                stack.push_back(Seg{tm, s.tb, fm, s.fb, s.depth + 1});
                stack.push_back(Seg{s.ta, tm, s.fa, fm, s.depth + 1});
            }
        }
        if (too_small) {
            R *= 1.0 + 1.7e-3 * (attempt + 1);  // contour too close to a zero
            continue;
        }
        double winding = total_arg / (2.0 * kPi);
        double rounded = std::round(winding);
        if (std::abs(winding - rounded) < 0.25) return static_cast<long>(rounded);
        R *= 1.0 + 1.7e-3 * (attempt + 1);
    }
    throw std::runtime_error("winding number certification failed");
}

}  // namespace expcond
