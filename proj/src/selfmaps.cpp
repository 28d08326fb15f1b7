#include "carleson/selfmaps.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "carleson/rng.hpp"

namespace carleson {

namespace {

Domain flip(Domain d) {
    if (d == Domain::Disk) return Domain::HalfPlane;
    if (d == Domain::HalfPlane) return Domain::Disk;
    throw DomainMismatch("only Disk and HalfPlane participate in map domains");
}

void require_self_map_domain(Domain d) {
    if (d != Domain::Disk && d != Domain::HalfPlane) {
        throw DomainMismatch("map domain must be Disk or HalfPlane");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(complex c) {
    if (c.imag() == 0.0) return format_double(c.real());
    if (c.real() == 0.0) return format_double(c.imag()) + "i";
    std::string out = format_double(c.real());
    if (c.imag() > 0.0) out += "+";
    out += format_double(c.imag()) + "i";
    return out;
}

} // namespace

HoloMap HoloMap::identity(Domain domain) {
    require_self_map_domain(domain);
    return HoloMap(IdentityDesc{}, domain, domain);
}

HoloMap HoloMap::constant(complex c, Domain domain, Domain codomain) {
    require_self_map_domain(domain);
    require_self_map_domain(codomain);
    if (!in_domain(c, codomain)) {
        throw CertificationError("constant map value outside its codomain");
    }
    return HoloMap(ConstantDesc{c}, domain, codomain);
}

HoloMap HoloMap::monomial(int k) {
    if (k < 1) throw CertificationError("monomial degree must be >= 1");
    return HoloMap(MonomialDesc{k}, Domain::Disk, Domain::Disk);
}

HoloMap HoloMap::blaschke(std::vector<complex> zeros, complex factor) {
    if (zeros.empty()) throw CertificationError("Blaschke product needs at least one zero");
    for (complex a : zeros) {
        if (!(std::abs(a) < 1.0)) {
            throw CertificationError("Blaschke zero outside the open disk");
        }
    }
    const double f = std::abs(factor);
    if (std::abs(f - 1.0) > 1e-9) {
        throw CertificationError("Blaschke factor must be unimodular");
    }
    return HoloMap(BlaschkeDesc{std::move(zeros), factor / f}, Domain::Disk, Domain::Disk);
}

HoloMap HoloMap::bounded_polynomial(std::vector<complex> coeffs) {
    if (coeffs.empty()) throw CertificationError("polynomial needs coefficients");
    double sum = 0.0;
    bool nonconstant = false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        sum += std::abs(coeffs[i]);
        if (i > 0 && coeffs[i] != complex(0.0)) nonconstant = true;
    }
    if (sum > 1.0 + 1e-12) {
        throw CertificationError("polynomial coefficient moduli sum above 1");
    }
    if (!nonconstant && !(std::abs(coeffs[0]) < 1.0)) {
        throw CertificationError("constant polynomial must have modulus below 1");
    }
    return HoloMap(PolyDesc{std::move(coeffs)}, Domain::Disk, Domain::Disk);
}

HoloMap HoloMap::lens(double s) {
    if (!(s > 0.0 && s < 1.0)) throw CertificationError("lens exponent outside (0, 1)");
    return HoloMap(LensDesc{s}, Domain::Disk, Domain::Disk);
}

HoloMap HoloMap::affine(double a, complex b) {
    if (!(a > 0.0)) throw CertificationError("affine slope must be positive");
    if (!(b.real() >= 0.0)) throw CertificationError("affine offset must have Re >= 0");
    return HoloMap(AffineDesc{a, b}, Domain::HalfPlane, Domain::HalfPlane);
}

HoloMap HoloMap::reciprocal() {
    return HoloMap(ReciprocalDesc{}, Domain::HalfPlane, Domain::HalfPlane);
}

HoloMap HoloMap::exp_quartic() {
    return HoloMap(ExpQuarticDesc{}, Domain::HalfPlane, Domain::HalfPlane);
}

HoloMap HoloMap::cayley_map(Domain from) {
    require_self_map_domain(from);
    return HoloMap(CayleyDesc{}, from, flip(from));
}

HoloMap HoloMap::exp_map_map() {
    return HoloMap(ExpMapDesc{}, Domain::HalfPlane, Domain::Disk);
}

HoloMap HoloMap::compose(std::vector<HoloMap> chain) {
    if (chain.empty()) throw IncompatibleChain("empty composition");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (chain[i].domain() != chain[i + 1].codomain()) {
            throw IncompatibleChain("composition link " + std::to_string(i) +
                                    ": codomain does not feed the next domain");
        }
    }
    const Domain dom = chain.back().domain();
    const Domain codom = chain.front().codomain();
    return HoloMap(ComposeDesc{std::move(chain)}, dom, codom);
}

HoloMap HoloMap::cayley_conjugate(HoloMap inner) {
    if (inner.domain() != inner.codomain()) {
        throw IncompatibleChain("Cayley conjugation needs a self-map");
    }
    const Domain dom = flip(inner.domain());
    return HoloMap(ConjugateDesc{std::make_shared<const HoloMap>(std::move(inner))}, dom, dom);
}

complex HoloMap::evaluate(complex z) const {
    if (domain_ == Domain::Disk) {
        if (!(std::norm(z) < 1.0)) throw DomainMismatch("evaluate: point outside the open disk");
    } else {
        if (!(z.real() > 0.0)) throw DomainMismatch("evaluate: point outside the open half-plane");
    }
    struct Visitor {
        complex z;
        const HoloMap& self;
        complex operator()(const IdentityDesc&) const { return z; }
        complex operator()(const ConstantDesc& d) const { return d.c; }
        complex operator()(const MonomialDesc& d) const {
            complex acc = z;
            for (int i = 1; i < d.k; ++i) acc *= z;
            return acc;
        }
        complex operator()(const BlaschkeDesc& d) const {
            complex acc = d.factor;
            for (complex a : d.zeros) acc *= (a - z) / (1.0 - std::conj(a) * z);
            return acc;
        }
        complex operator()(const PolyDesc& d) const {
            complex acc = 0.0;
            for (auto it = d.coeffs.rbegin(); it != d.coeffs.rend(); ++it) acc = acc * z + *it;
            return acc;
        }
        complex operator()(const LensDesc& d) const {
            const complex w = cayley(z);
            return cayley(std::exp(d.s * std::log(w)));
        }
        complex operator()(const AffineDesc& d) const { return d.a * z + d.b; }
        complex operator()(const ReciprocalDesc&) const { return 1.0 / z; }
        complex operator()(const ExpQuarticDesc&) const {
            const complex t = cayley(z);
            const complex t2 = t * t;
            return std::exp(t2 * t2);
        }
        complex operator()(const CayleyDesc&) const { return cayley(z); }
        complex operator()(const ExpMapDesc&) const { return exp_map(z); }
        complex operator()(const ComposeDesc& d) const {
            complex acc = z;
            for (auto it = d.chain.rbegin(); it != d.chain.rend(); ++it) acc = it->evaluate(acc);
            return acc;
        }
        complex operator()(const ConjugateDesc& d) const {
            return cayley(d.inner->evaluate(cayley(z)));
        }
    };
    const complex out = std::visit(Visitor{z, *this}, desc_);
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
        throw NumericOverflow("evaluate: non-finite value from a certified map");
    }
    return out;
}

std::string HoloMap::descriptor() const {
    struct Visitor {
        const HoloMap& self;
        std::string operator()(const IdentityDesc&) const { return "identity"; }
        std::string operator()(const ConstantDesc& d) const {
            return "constant:" + format_complex(d.c);
        }
        std::string operator()(const MonomialDesc& d) const {
            return "monomial:" + std::to_string(d.k);
        }
        std::string operator()(const BlaschkeDesc& d) const {
            std::string out = "blaschke:";
            for (std::size_t i = 0; i < d.zeros.size(); ++i) {
                if (i) out += ",";
                out += format_complex(d.zeros[i]);
            }
            if (d.factor != complex(1.0)) out += "@" + format_complex(d.factor);
            return out;
        }
        std::string operator()(const PolyDesc& d) const {
            std::string out = "poly:";
            for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
                if (i) out += ",";
                out += format_complex(d.coeffs[i]);
            }
            return out;
        }
        std::string operator()(const LensDesc& d) const { return "lens:" + format_double(d.s); }
        std::string operator()(const AffineDesc& d) const {
            return "affine:" + format_double(d.a) + "," + format_complex(d.b);
        }
        std::string operator()(const ReciprocalDesc&) const { return "reciprocal"; }
        std::string operator()(const ExpQuarticDesc&) const { return "expquartic"; }
        std::string operator()(const CayleyDesc&) const { return "cayley"; }
        std::string operator()(const ExpMapDesc&) const { return "expmap"; }
        std::string operator()(const ComposeDesc& d) const {
            std::string out;
            for (std::size_t i = 0; i < d.chain.size(); ++i) {
                if (i) out += "|";
                out += d.chain[i].descriptor();
            }
            return out;
        }
        std::string operator()(const ConjugateDesc& d) const {
            return "tconj(" + d.inner->descriptor() + ")";
        }
    };
    return std::visit(Visitor{*this}, desc_);
}

// --- descriptor parsing -----------------------------------------------------

namespace {

complex parse_complex(const std::string& text) {
    if (text.empty()) throw UnknownSymbol("empty number");
    std::string t = text;
    bool has_i = t.back() == 'i';
    if (has_i) t.pop_back();
    // Find the split between real and imaginary parts: a sign that is neither
    // leading nor part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < t.size(); ++p) {
        if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
            split = p;
        }
    }
    auto to_double = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UnknownSymbol("bad number '" + s + "'");
        }
        if (used != s.size()) throw UnknownSymbol("bad number '" + s + "'");
        return v;
    };
    if (!has_i) {
        if (split != std::string::npos) throw UnknownSymbol("bad number '" + text + "'");
        return {to_double(t), 0.0};
    }
    if (split == std::string::npos) return {0.0, to_double(t)};
    return {to_double(t.substr(0, split)), to_double(t.substr(split))};
}

std::vector<complex> parse_complex_list(const std::string& text) {
    std::vector<complex> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_complex(text.substr(start, comma - start)));
        start = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

/// Splits on '|' at parenthesis depth zero.
std::vector<std::string> split_chain(const std::string& text) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t p = 0; p < text.size(); ++p) {
        if (text[p] == '(') ++depth;
        else if (text[p] == ')') --depth;
        else if (text[p] == '|' && depth == 0) {
            parts.push_back(text.substr(start, p - start));
            start = p + 1;
        }
    }
    parts.push_back(text.substr(start));
    return parts;
}

HoloMap parse_atom(const std::string& text, Domain hint) {
    if (text.empty()) throw UnknownSymbol("empty map descriptor");
    if (text.rfind("tconj(", 0) == 0) {
        if (text.back() != ')') throw UnknownSymbol("unclosed tconj(...)");
        const std::string inner = text.substr(6, text.size() - 7);
        Domain inner_hint = hint == Domain::Disk ? Domain::HalfPlane : Domain::Disk;
        return HoloMap::cayley_conjugate(parse_map(inner, inner_hint));
    }
    const std::size_t colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto need_args = [&] {
        if (args.empty()) throw UnknownSymbol("descriptor '" + name + "' needs arguments");
    };
    // Fixed-domain symbols must agree with the domain they are asked to act
    // on; returning a map on the other side would surface later as a
    // confusing DomainMismatch (or not at all).
    auto on_hint = [&](HoloMap m) {
        if (m.domain() != hint) {
            throw UnknownSymbol(
                "descriptor '" + name + "' lives on the " +
                (m.domain() == Domain::Disk ? "disk" : "half-plane") +
                ", not the requested domain");
        }
        return m;
    };
    try {
        if (name == "identity") return HoloMap::identity(hint);
        if (name == "constant") {
            need_args();
            return HoloMap::constant(parse_complex(args), hint, hint);
        }
        if (name == "monomial") {
            need_args();
            const complex k = parse_complex(args);
            if (k.imag() != 0.0 || k.real() != std::floor(k.real())) {
                throw UnknownSymbol("monomial degree must be an integer");
            }
            return on_hint(HoloMap::monomial(static_cast<int>(k.real())));
        }
        if (name == "blaschke") {
            need_args();
            const std::size_t at = args.find('@');
            if (at == std::string::npos)
                return on_hint(HoloMap::blaschke(parse_complex_list(args)));
            return on_hint(HoloMap::blaschke(parse_complex_list(args.substr(0, at)),
                                             parse_complex(args.substr(at + 1))));
        }
        if (name == "poly") {
            need_args();
            return on_hint(HoloMap::bounded_polynomial(parse_complex_list(args)));
        }
        if (name == "lens") {
            need_args();
            return on_hint(HoloMap::lens(parse_complex(args).real()));
        }
        if (name == "affine") {
            need_args();
            auto list = parse_complex_list(args);
            if (list.size() != 2) throw UnknownSymbol("affine needs slope and offset");
            if (list[0].imag() != 0.0) throw UnknownSymbol("affine slope must be real");
            return on_hint(HoloMap::affine(list[0].real(), list[1]));
        }
        if (name == "reciprocal") return on_hint(HoloMap::reciprocal());
        if (name == "expquartic") return on_hint(HoloMap::exp_quartic());
        if (name == "cayley") return HoloMap::cayley_map(hint);
        if (name == "expmap") return on_hint(HoloMap::exp_map_map());
    } catch (const CertificationError& e) {
        throw UnknownSymbol(std::string("descriptor '") + text + "' rejected: " + e.what());
    } catch (const IncompatibleChain& e) {
        throw UnknownSymbol(std::string("descriptor '") + text + "' rejected: " + e.what());
    }
    throw UnknownSymbol("unknown map descriptor '" + name + "'");
}

} // namespace

HoloMap parse_map(const std::string& text, Domain domain_hint) {
    require_self_map_domain(domain_hint);
    const auto parts = split_chain(text);
    // Rightmost map acts first and starts on domain_hint; each codomain
    // becomes the hint for the next map to the left.
    std::vector<HoloMap> chain;
    Domain hint = domain_hint;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        chain.insert(chain.begin(), parse_atom(*it, hint));
        hint = chain.front().codomain();
    }
    if (chain.size() == 1) return chain.front();
    try {
        return HoloMap::compose(std::move(chain));
    } catch (const IncompatibleChain& e) {
        throw UnknownSymbol(std::string("chain '") + text + "' rejected: " + e.what());
    }
}

HoloMap transfer(const HoloMap& m, TransferKind kind) {
    switch (kind) {
        case TransferKind::ComposeWithT: {
            if (m.domain() != Domain::Disk && m.domain() != Domain::HalfPlane) {
                throw IncompatibleChain("ComposeWithT needs a Disk or HalfPlane domain");
            }
            const Domain from = m.domain() == Domain::Disk ? Domain::HalfPlane : Domain::Disk;
            return HoloMap::compose({m, HoloMap::cayley_map(from)});
        }
        case TransferKind::ComposeWithE: {
            if (m.domain() != Domain::Disk) {
                throw IncompatibleChain("ComposeWithE needs a map starting on the disk");
            }
            return HoloMap::compose({m, HoloMap::exp_map_map()});
        }
        case TransferKind::ConjugateByT:
            return HoloMap::cayley_conjugate(m);
    }
    throw Error("unreachable transfer kind");
}

// --- audits -----------------------------------------------------------------

namespace {

complex sample_domain_point(Rng& rng, Domain d) {
    const double r = std::sqrt(rng.next_double());
    const double theta = rng.uniform(-pi, pi);
    const complex z = std::polar(r, theta);
    if (d == Domain::Disk) return z;
    return cayley(z);
}

double metric(Domain d, complex a, complex b) {
    return d == Domain::Disk ? rho_disk(a, b) : rho_half(a, b);
}

} // namespace

SchwarzPickReport schwarz_pick_audit(const HoloMap& m, std::size_t pairs,
                                     std::uint64_t seed, double min_rho) {
    if (m.codomain() != Domain::Disk && m.codomain() != Domain::HalfPlane) {
        throw DomainMismatch("contraction audit needs a Disk or HalfPlane codomain");
    }
    Rng rng(seed, 0x5c4a);
    SchwarzPickReport report;
    while (report.pairs < pairs) {
        const complex z = sample_domain_point(rng, m.domain());
        const complex w = sample_domain_point(rng, m.domain());
        const double source = metric(m.domain(), z, w);
        if (!(source > min_rho)) continue;
        const double image = metric(m.codomain(), m.evaluate(z), m.evaluate(w));
        const double ratio = image / source;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.witness_z = z;
            report.witness_w = w;
        }
        ++report.pairs;
    }
    return report;
}

HarnackReport harnack_audit(const HoloMap& f, complex c, double s,
                            std::size_t samples, std::uint64_t seed) {
    if (f.domain() != Domain::HalfPlane || f.codomain() != Domain::HalfPlane) {
        throw DomainMismatch("Harnack audit needs a half-plane self-map");
    }
    if (!in_domain(c, Domain::HalfPlane)) throw DomainMismatch("Harnack center outside P");
    if (!(s > 0.0 && s < 1.0)) throw Error("Harnack radius outside (0, 1)");
    Rng rng(seed, 0xa4c0);
    const double fc = std::abs(f.evaluate(c));
    HarnackReport report;
    report.lower_bound = 1.0 / harnack_constant(s);
    report.upper_bound = harnack_constant(s);
    report.min_ratio = 1.0;
    report.max_ratio = 1.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = s * std::sqrt(rng.next_double());
        const complex u = std::polar(r, rng.uniform(-pi, pi));
        const complex z = pseudo_disk_push_half(c, u);
        const double ratio = std::abs(f.evaluate(z)) / fc;
        report.min_ratio = std::min(report.min_ratio, ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    report.samples = samples;
    report.within_bounds = report.min_ratio >= report.lower_bound - 1e-9 &&
                           report.max_ratio <= report.upper_bound + 1e-9;
    return report;
}

} // namespace carleson
