#include "onepoint/certify.hpp"

#include <sstream>

#include "json.hpp"
#include "onepoint/sampling.hpp"
#include "onepoint/textio.hpp"
#include "onepoint/upoly.hpp"

namespace onepoint {

namespace {

MPoly restrict_chart(const MPoly& f) {
    const int n = f.nvars() - 1;
    return f.substitute_var(n, MPoly::one(f.field(), f.nvars()));
}

/// V(F) subset of V(g), by "F divides g^(deg F)" when the power stays under
/// the degree cap, else by sampling points of V(F) on univariate slices.
CheckRecord containment_check(std::string name, const MPoly& F, const MPoly& g) {
    CheckRecord rec;
    rec.name = std::move(name);
    if (F.is_zero()) throw DivisorZeroError();
    const int dF = *F.total_degree();
    if (dF == 0) {
        rec.method = "exact-division";
        rec.passed = true;
        rec.detail = "divisor is empty";
        return rec;
    }
    const int64_t dg = g.is_zero() ? 0 : int64_t(*g.total_degree());
    if (dg * dF <= degree_cap()) {
        rec.method = "exact-division";
        rec.passed = exact_div(g.pow(uint64_t(dF)), F).has_value();
        rec.detail = "F | g^" + std::to_string(dF);
        return rec;
    }

    // sampling fallback: fix all but one variable, solve the slice, test g
    rec.method = "point-sampling";
    rec.probabilistic = true;
    const FieldPtr base = F.field();
    int e = 1;
    int64_t order = base->order();
    while (e < 4 && order < 64 && order * base->order() <= (int64_t(1) << 16)) {
        ++e;
        order *= base->order();
    }
    FieldPtr k = e == 1 ? base : FieldConfig::make(base->p(), base->k() * e);
    const MPoly fe = F.embedded(k);
    const MPoly ge = g.embedded(k);
    Sampler rng(0x5eed + uint64_t(dF));
    const int nv = F.nvars();
    int64_t found = 0;
    bool ok = true;
    for (int trial = 0; trial < 256 && found < 64 && ok; ++trial) {
        const int free_var = trial % nv;
        std::vector<MPoly> images;
        std::vector<Fq> fixed(size_t(nv), Fq::zero(k));
        for (int v = 0; v < nv; ++v) {
            if (v == free_var) {
                images.push_back(MPoly::variable(k, nv, v));
            } else {
                fixed[size_t(v)] = element_at(k, int64_t(rng.below(uint64_t(k->order()))));
                images.push_back(MPoly::constant(k, nv, fixed[size_t(v)]));
            }
        }
        const MPoly slice = fe.substitute(images);
        if (slice.is_zero()) continue;  // whole slice inside V(F); skip (cannot enumerate roots)
        if (!slice.mentions(free_var)) continue;
        for (const auto& [root, mult] : upoly_roots(UPoly::from_mpoly(slice))) {
            std::vector<Fq> pt = fixed;
            pt[size_t(free_var)] = root;
            bool all_zero = true;
            for (const Fq& c : pt) all_zero = all_zero && c.is_zero();
            if (all_zero) continue;
            ++found;
            if (!ge.eval(pt).is_zero()) {
                ok = false;
                break;
            }
        }
    }
    rec.samples = found;
    rec.passed = ok;
    rec.detail = "sampled " + std::to_string(found) + " divisor points";
    return rec;
}

MPoly chart_jacobian_numerator(const ProjMap& f) {
    const int n = f.n;
    std::vector<MPoly> chart;
    chart.reserve(f.coords.size());
    for (const MPoly& c : f.coords) chart.push_back(restrict_chart(c));
    const MPoly& wn = chart.back();
    auto mat = std::vector<std::vector<MPoly>>(size_t(n));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            mat[size_t(j)].push_back(wn * chart[size_t(j)].derivative(l) - chart[size_t(j)] * wn.derivative(l));
    return poly_matrix_det(mat);
}

}  // namespace

CheckRecord check_divisor_into_H(const MPoly& F, const ProjMap& f) {
    if (F.is_zero()) throw DivisorZeroError();
    const FieldPtr work = common_field(F.field(), f.field);
    return containment_check("divisor-into-H", F.embedded(work), f.last().embedded(work));
}

CheckRecord check_point_off_H(const ProjMap& f, const std::vector<Fq>& x) {
    const std::vector<Fq> image = apply_map(f, x);
    CheckRecord rec;
    rec.name = "point-off-H";
    rec.method = "evaluation";
    rec.passed = !image.back().is_zero();
    rec.detail = "image " + point_string(image);
    return rec;
}

CheckRecord check_etale_off_H(const ProjMap& f) {
    const MPoly jac = chart_jacobian_numerator(f);
    if (jac.is_zero()) throw DegenerateJacobianError("chart jacobian of the map");
    CheckRecord rec = containment_check("etale-off-H", jac, restrict_chart(f.last()));
    rec.detail += "; jacobian degree " + std::to_string(*jac.total_degree());
    return rec;
}

CheckRecord check_step_nonetale_locus(const ProjMap& f, const MPoly& r0) {
    const MPoly jac = chart_jacobian_numerator(f);
    if (jac.is_zero()) throw DegenerateJacobianError("chart jacobian of the step map");
    // on the chart z_n = 1 the z_n factor of the allowed locus is invisible,
    // so the containment target is the restricted constant coefficient
    return containment_check("step-nonetale-locus", jac, restrict_chart(r0.embedded(f.field)));
}

FiberStats fiber_sample(const ProjMap& f, int targets, int ext_degree, uint64_t seed) {
    FieldPtr k;
    try {
        k = ext_degree == 1 ? f.field : FieldConfig::make(f.field->p(), f.field->k() * ext_degree);
    } catch (const LimitExceededError& e) {
        throw EnumerationCapExceededError(e.what());
    }
    const ProjMap fe = f.embedded(k);
    FiberStats stats;
    stats.ext_degree = ext_degree;
    stats.targets = targets;
    Sampler rng(seed);

    if (f.n == 1) {
        stats.geometric = true;
        const MPoly w0 = restrict_chart(fe.coords[0]);
        const MPoly w1 = restrict_chart(fe.coords[1]);
        const std::vector<Fq> infinity = {Fq::one(k), Fq::zero(k)};
        const std::vector<Fq> inf_image = apply_map(fe, infinity);
        for (int s = 0; s < targets; ++s) {
            const Fq u = element_at(k, int64_t(rng.below(uint64_t(k->order()))));
            const MPoly hm = w0 - w1.scaled(u);
            if (hm.is_zero()) throw InternalError("fiber polynomial vanished identically");
            const UPoly h = UPoly::from_mpoly(hm);
            int count = h.degree() >= 1 ? distinct_root_count(h) : 0;
            if (proj_equal(inf_image, {u, Fq::one(k)})) ++count;  // source point at infinity
            ++stats.size_counts[count];
        }
        return stats;
    }

    // rational-point counting for higher dimensions: bucket all source
    // points off f^{-1}(H) by their normalized image
    int64_t points = 1;
    for (int i = 0; i <= f.n; ++i) {
        points *= k->order();
        if (points > (int64_t(1) << 20)) throw EnumerationCapExceededError("fiber enumeration space too large");
    }
    std::map<std::vector<int64_t>, int> buckets;
    std::vector<int64_t> idx(size_t(f.n) + 1, 0);
    // affine-layer enumeration of representatives: leading coordinate 1
    for (int lead = f.n; lead >= 0; --lead) {
        const int free_vars = f.n - lead;
        int64_t combos = 1;
        for (int i = 0; i < free_vars; ++i) combos *= k->order();
        for (int64_t c = 0; c < combos; ++c) {
            std::vector<Fq> pt;
            for (int i = 0; i < lead; ++i) pt.push_back(Fq::zero(k));
            pt.push_back(Fq::one(k));
            int64_t rest = c;
            for (int i = 0; i < free_vars; ++i) {
                pt.push_back(element_at(k, rest % k->order()));
                rest /= k->order();
            }
            std::vector<Fq> image;
            bool all_zero = true;
            for (const MPoly& w : fe.coords) {
                image.push_back(w.eval(pt));
                all_zero = all_zero && image.back().is_zero();
            }
            if (all_zero) throw BasePointHitError("enumeration hit a common zero");
            if (image.back().is_zero()) continue;  // source maps into H
            const Fq scale = image.back().inv();
            std::vector<int64_t> key;
            for (const Fq& y : image) key.push_back((y * scale).index());
            ++buckets[key];
        }
    }
    for (int s = 0; s < targets; ++s) {
        std::vector<int64_t> key;
        for (int i = 0; i < f.n; ++i) key.push_back(element_at(k, int64_t(rng.below(uint64_t(k->order())))).index());
        key.push_back(Fq::one(k).index());
        const auto it = buckets.find(key);
        ++stats.size_counts[it == buckets.end() ? 0 : it->second];
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Chain certification

namespace {

void push(Certificate& cert, CheckRecord rec) {
    if (rec.probabilistic) cert.sampling_used = true;
    cert.records.push_back(std::move(rec));
}

void push_fail(Certificate& cert, const std::string& name, const std::string& why) {
    push(cert, CheckRecord{name, "recompute", false, false, 0, why});
}

void push_pass(Certificate& cert, const std::string& name, const std::string& method, std::string detail = "") {
    push(cert, CheckRecord{name, method, true, false, 0, std::move(detail)});
}

}  // namespace

Certificate certify_chain(const CoverChain& chain, const std::optional<FiberSpec>& fibers) {
    Certificate cert;
    cert.composite_degree = chain.composite.degree;

    // input triple
    try {
        GoodTriple::make(chain.input.n, chain.input.field, chain.input.index, chain.input.cone, chain.input.point);
        push_pass(cert, "input.triple", "revalidation");
    } catch (const Error& e) {
        push_fail(cert, "input.triple", e.what());
    }

    // field tower
    {
        bool ok = !chain.field_history.empty() && chain.field_history.front()->same(*chain.input.field) &&
                  chain.field_history.back()->same(*chain.field);
        for (size_t i = 0; ok && i + 1 < chain.field_history.size(); ++i)
            ok = chain.field_history[i + 1]->k() == 2 * chain.field_history[i]->k() &&
                 chain.field_history[i + 1]->p() == chain.field_history[i]->p();
        if (ok)
            push_pass(cert, "field-history", "recompute",
                      std::to_string(chain.field_history.size() - 1) + " escalation(s)");
        else
            push_fail(cert, "field-history", "escalations must double k from the input field");
    }

    // per-step reconstruction
    GoodTriple t = chain.input.embedded(chain.field);
    for (size_t s = 0; s < chain.steps.size(); ++s) {
        const ChainStep& step = chain.steps[s];
        const std::string prefix = "step" + std::to_string(s) + ".";
        try {
            const Step2Result redo = step2_map(t, step.coord);
            push_pass(cert, prefix + "conditions-abcd", "recompute");
            bool same = redo.map.coords == step.map.coords && redo.r0 == step.r0 &&
                        redo.step_degree == step.step_degree && redo.next.cone == step.next.cone &&
                        redo.next.point == step.next.point;
            if (same)
                push_pass(cert, prefix + "reconstruction", "recompute",
                          "degree " + std::to_string(step.step_degree));
            else
                push_fail(cert, prefix + "reconstruction", "stored step differs from recomputation");

            // containment facts
            const int i = t.index;
            const MPoly moved_cone = step.coord.transform(t.cone);
            const bool divides = exact_div(step.map.coords[size_t(i)], moved_cone).has_value();
            if (divides)
                push_pass(cert, prefix + "cone-divides-w", "exact-division");
            else
                push_fail(cert, prefix + "cone-divides-w", "transformed cone does not divide w_i");
            bool hyper = true;
            for (int j = 0; j < t.n && hyper; ++j) {
                if (j == i) continue;
                hyper = exact_div(step.map.coords[size_t(j)], MPoly::variable(chain.field, t.n + 1, j)).has_value();
            }
            if (hyper)
                push_pass(cert, prefix + "hyperplane-containment", "exact-division");
            else
                push_fail(cert, prefix + "hyperplane-containment", "w_j not divisible by z_j");

            try {
                CheckRecord rec = check_step_nonetale_locus(step.map, step.r0);
                rec.name = prefix + rec.name;
                push(cert, rec);
            } catch (const DegenerateJacobianError& e) {
                push_fail(cert, prefix + "step-nonetale-locus", e.what());
            }
            t = step.next;
        } catch (const Error& e) {
            push_fail(cert, prefix + "conditions-abcd", e.what());
            t = step.next;  // continue with stored data to surface further failures
        }
    }

    // residual cone and the final normalization
    if (t.cone_is_hyperplane_power())
        push_pass(cert, "residual-cone", "recompute", "cone is a power of z_n");
    else
        push_fail(cert, "residual-cone", "residual cone is not a power of z_n");

    {
        bool ok = true;
        std::string why;
        try {
            const MPoly cone2 = chain.final_normalization.transform(t.cone);
            const std::vector<Fq> pt2 = chain.final_normalization.pullback_point(t.point);
            GoodTriple moved = GoodTriple::make(t.n, chain.field, t.index, cone2, pt2);
            if (!moved.cone_is_hyperplane_power()) {
                ok = false;
                why = "normalization destroyed the hyperplane form";
            }
            for (const Fq& c : pt2)
                if (c.is_zero()) {
                    ok = false;
                    why = "normalized point still touches a coordinate hyperplane";
                }
        } catch (const Error& e) {
            ok = false;
            why = e.what();
        }
        if (ok)
            push_pass(cert, "final-normalization", "recompute");
        else
            push_fail(cert, "final-normalization", why);
    }

    // the closing map
    if (chain.abhyankar.coords == abhyankar_map(chain.n, chain.p, chain.field).coords)
        push_pass(cert, "abhyankar.match", "recompute");
    else
        push_fail(cert, "abhyankar.match", "stored closing map is not the subset-sum map");

    // recomposition
    try {
        ProjMap cur = ProjMap::identity(chain.field, chain.n);
        for (const ChainStep& step : chain.steps) cur = compose(step.map, compose(step.coord.inverse_as_map(), cur));
        cur = compose(chain.abhyankar, compose(chain.final_normalization.inverse_as_map(), cur));
        if (cur.coords == chain.composite.coords && cur.degree == chain.composite.degree)
            push_pass(cert, "composite.recomposition", "recompute", "degree " + std::to_string(cur.degree));
        else
            push_fail(cert, "composite.recomposition", "stored composite differs from the recomposed chain");
    } catch (const Error& e) {
        push_fail(cert, "composite.recomposition", e.what());
    }

    // degree bookkeeping
    {
        int64_t expect = 1;
        for (const ChainStep& step : chain.steps) expect *= step.step_degree;
        int64_t ab = 1, ppow = 1;
        for (int i = 0; i < chain.n; ++i) {
            ppow *= chain.p;
            ab += ppow;
        }
        expect *= ab;
        if (expect == chain.composite.degree)
            push_pass(cert, "composite.degree", "recompute", std::to_string(expect));
        else
            push_fail(cert, "composite.degree",
                      "expected " + std::to_string(expect) + ", stored " + std::to_string(chain.composite.degree));
    }

    // the three theorem conclusions
    try {
        CheckRecord rec = check_divisor_into_H(chain.input.cone.embedded(chain.field), chain.composite);
        rec.name = "composite.divisor-into-H";
        push(cert, rec);
    } catch (const Error& e) {
        push_fail(cert, "composite.divisor-into-H", e.what());
    }
    try {
        std::vector<Fq> x;
        for (const Fq& c : chain.input.point) x.push_back(embed(c, chain.field));
        CheckRecord rec = check_point_off_H(chain.composite, x);
        rec.name = "composite.point-off-H";
        push(cert, rec);
    } catch (const Error& e) {
        push_fail(cert, "composite.point-off-H", e.what());
    }
    try {
        CheckRecord rec = check_etale_off_H(chain.composite);
        rec.name = "composite.etale-off-H";
        push(cert, rec);
    } catch (const Error& e) {
        push_fail(cert, "composite.etale-off-H", e.what());
    }

    if (fibers) cert.fiber = fiber_sample(chain.composite, fibers->targets, fibers->ext_degree, fibers->seed);

    cert.pass = true;
    for (const CheckRecord& rec : cert.records) {
        if (!rec.passed) {
            cert.pass = false;
            if (cert.first_failure.empty()) cert.first_failure = rec.name;
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Rendering

std::string Certificate::to_text() const {
    std::ostringstream os;
    os << "onepoint-format: 1\n";
    os << "kind: certificate\n";
    os << "verdict: " << (pass ? "pass" : "fail") << "\n";
    if (!pass) os << "first-failure: " << first_failure << "\n";
    os << "composite-degree: " << composite_degree << "\n";
    os << "sampling-used: " << (sampling_used ? "yes" : "no") << "\n";
    os << "checks: " << records.size() << "\n";
    for (const CheckRecord& rec : records) {
        os << "check: " << rec.name << " | method: " << rec.method << " | result: "
           << (rec.passed ? "pass" : "fail");
        if (rec.probabilistic) os << " | samples: " << rec.samples;
        if (!rec.detail.empty()) os << " | detail: " << rec.detail;
        os << "\n";
    }
    if (fiber) {
        os << "fiber: ext-degree=" << fiber->ext_degree << " targets=" << fiber->targets
           << " counting=" << (fiber->geometric ? "geometric" : "rational") << " sizes={";
        bool first = true;
        for (const auto& [size, count] : fiber->size_counts) {
            if (!first) os << ", ";
            first = false;
            os << size << ":" << count;
        }
        os << "}\n";
    }
    return os.str();
}

std::string Certificate::to_json_string() const {
    nlohmann::ordered_json j;
    j["format"] = 1;
    j["kind"] = "certificate";
    j["verdict"] = pass ? "pass" : "fail";
    if (!pass) j["first-failure"] = first_failure;
    j["composite-degree"] = composite_degree;
    j["sampling-used"] = sampling_used;
    auto checks = nlohmann::ordered_json::array();
    for (const CheckRecord& rec : records) {
        nlohmann::ordered_json c;
        c["name"] = rec.name;
        c["method"] = rec.method;
        c["result"] = rec.passed ? "pass" : "fail";
        if (rec.probabilistic) c["samples"] = rec.samples;
        if (!rec.detail.empty()) c["detail"] = rec.detail;
        checks.push_back(c);
    }
    j["checks"] = checks;
    if (fiber) {
        nlohmann::ordered_json fj;
        fj["ext-degree"] = fiber->ext_degree;
        fj["targets"] = fiber->targets;
        fj["counting"] = fiber->geometric ? "geometric" : "rational";
        auto sizes = nlohmann::ordered_json::object();
        for (const auto& [size, count] : fiber->size_counts) sizes[std::to_string(size)] = count;
        fj["sizes"] = sizes;
        j["fiber"] = fj;
    }
    return j.dump(2);
}

}  // namespace onepoint
