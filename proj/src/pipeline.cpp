#include "onepoint/pipeline.hpp"

#include <istream>
#include <map>
#include <sstream>

#include "onepoint/sampling.hpp"
#include "onepoint/textio.hpp"

namespace onepoint {

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// A random member of the subgroup fixing {z_j = 0} setwise for j < index
/// and acting only on z_index..z_n: diagonal in the leading block, an
/// invertible matrix in the trailing block.
CoordChange sample_stabilizer(Sampler& rng, const FieldPtr& f, int n, int index) {
    const int64_t q = f->order();
    while (true) {
        auto rows = std::vector<std::vector<Fq>>(size_t(n) + 1);
        for (int j = 0; j <= n; ++j) {
            rows[size_t(j)].assign(size_t(n) + 1, Fq::zero(f));
            if (j < index) rows[size_t(j)][size_t(j)] = element_at(f, 1 + int64_t(rng.below(uint64_t(q - 1))));
        }
        for (int j = index; j <= n; ++j)
            for (int c = index; c <= n; ++c)
                rows[size_t(j)][size_t(c)] = element_at(f, int64_t(rng.below(uint64_t(q))));
        if (auto change = CoordChange::from_matrix(f, std::move(rows))) return *change;
    }
}

int tally_slot(char condition) {
    switch (condition) {
        case 'a': return 0;
        case 'b': return 1;
        case 'c': return 2;
        case 'd': return 3;
        default: return 4;
    }
}

std::string tally_string(const std::array<uint64_t, 5>& tally) {
    std::ostringstream os;
    os << "a:" << tally[0] << " b:" << tally[1] << " c:" << tally[2] << " d:" << tally[3] << " next:" << tally[4];
    return os.str();
}

}  // namespace

TripleInput make_triple(int n, const FieldPtr& field, const MPoly& cone, const std::vector<Fq>& point) {
    if (int(point.size()) != n + 1) throw FormatError("point arity mismatch");
    std::optional<int> swapped;
    MPoly use_cone = cone;
    std::vector<Fq> use_point = point;
    if (point.back().is_zero()) {
        int l = -1;
        for (int j = 0; j <= n; ++j)
            if (!point[size_t(j)].is_zero()) {
                l = j;
                break;
            }
        if (l < 0) throw FormatError("projective point cannot be zero");
        swapped = l;
        std::vector<MPoly> images;
        for (int v = 0; v <= n; ++v) {
            int target = v;
            if (v == l) target = n;
            else if (v == n) target = l;
            images.push_back(MPoly::variable(cone.field(), n + 1, target));
        }
        use_cone = cone.substitute(images);
        std::swap(use_point[size_t(l)], use_point[size_t(n)]);
    }
    return TripleInput{GoodTriple::make(n, field, 0, use_cone, use_point), swapped};
}

SearchOutcome coordinate_search(const GoodTriple& t, uint64_t seed, const SearchPolicy& policy) {
    GoodTriple triple = t;
    Sampler rng(seed);
    std::array<uint64_t, 5> tally{};
    std::vector<FieldPtr> escalations;
    uint64_t used = 0;
    for (int round = 0; round <= policy.max_extensions; ++round) {
        for (uint64_t trial = 0; trial < policy.max_trials; ++trial) {
            const CoordChange coord = sample_stabilizer(rng, triple.field, triple.n, triple.index);
            ++used;
            try {
                Step2Result step = step2_map(triple, coord);
                return SearchOutcome{coord, std::move(step), triple, std::move(escalations), used, tally};
            } catch (const ConditionFailedError& e) {
                ++tally[size_t(tally_slot(e.condition))];
            }
        }
        if (round == policy.max_extensions) break;
        FieldPtr bigger;
        try {
            bigger = FieldConfig::make(triple.field->p(), 2 * triple.field->k());
        } catch (const LimitExceededError&) {
            break;
        }
        triple = triple.embedded(bigger);
        escalations.push_back(bigger);
    }
    throw SearchFailedError(tally, tally_string(tally));
}

RunResult run_pipeline(const GoodTriple& input, uint64_t seed, const SearchPolicy& policy,
                       const std::optional<FiberSpec>& fibers) {
    return run_pipeline(TripleInput{input, std::nullopt}, seed, policy, fibers);
}

RunResult run_pipeline(const TripleInput& input, uint64_t seed, const SearchPolicy& policy,
                       const std::optional<FiberSpec>& fibers) {
    const GoodTriple& start = input.triple;
    CoverChain chain;
    chain.n = start.n;
    chain.p = start.field->p();
    chain.seed = seed;
    chain.input = start;
    chain.input_swap = input.swapped_var;
    chain.field = start.field;
    chain.field_history = {start.field};

    GoodTriple t = start;
    while (t.index < t.n && !t.cone_is_hyperplane_power()) {
        SearchOutcome found = coordinate_search(t, mix_seed(seed, uint64_t(t.index)), policy);
        if (!found.escalations.empty()) {
            // lift the chain so far into the escalated field
            chain.field = found.escalations.back();
            for (const FieldPtr& f : found.escalations) chain.field_history.push_back(f);
            for (ChainStep& s : chain.steps) {
                s.coord = s.coord.embedded(chain.field);
                s.map = s.map.embedded(chain.field);
                s.next = s.next.embedded(chain.field);
                s.r0 = s.r0.embedded(chain.field);
            }
        }
        chain.steps.push_back(ChainStep{found.coord, found.step.map, found.step.next, found.step.r0,
                                        found.step.step_degree});
        t = found.step.next;
    }

    // the residual divisor is a power of z_n; shear the point off the
    // remaining coordinate hyperplanes (z_l += z_n leaves the cone alone)
    {
        auto rows = std::vector<std::vector<Fq>>(size_t(t.n) + 1);
        for (int j = 0; j <= t.n; ++j) {
            rows[size_t(j)].assign(size_t(t.n) + 1, Fq::zero(chain.field));
            rows[size_t(j)][size_t(j)] = Fq::one(chain.field);
        }
        for (int l = 0; l < t.n; ++l)
            if (t.point[size_t(l)].is_zero()) rows[size_t(l)][size_t(t.n)] = -Fq::one(chain.field);
        chain.final_normalization = *CoordChange::from_matrix(chain.field, std::move(rows));
    }

    chain.abhyankar = abhyankar_map(chain.n, chain.p, chain.field);

    ProjMap cur = ProjMap::identity(chain.field, chain.n);
    for (const ChainStep& s : chain.steps) cur = compose(s.map, compose(s.coord.inverse_as_map(), cur));
    cur = compose(chain.final_normalization.inverse_as_map(), cur);
    chain.composite = compose(chain.abhyankar, cur);

    Certificate cert = certify_chain(chain, fibers);
    return RunResult{std::move(chain), std::move(cert)};
}

// ---------------------------------------------------------------------------
// File formats

namespace {

/// Line-oriented "key: value" reader; '#' lines are comments.
class KeyValueReader {
  public:
    explicit KeyValueReader(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto colon = line.find(": ");
            if (colon == std::string::npos) throw FormatError("expected 'key: value' line, got '" + line + "'");
            lines_.emplace_back(line.substr(0, colon), line.substr(colon + 2));
        }
    }

    std::string expect(const std::string& key) {
        if (pos_ >= lines_.size()) throw FormatError("missing '" + key + "' line");
        if (lines_[pos_].first != key)
            throw FormatError("expected '" + key + "', found '" + lines_[pos_].first + "'");
        return lines_[pos_++].second;
    }

  private:
    std::vector<std::pair<std::string, std::string>> lines_;
    size_t pos_ = 0;
};

std::vector<MPoly> parse_map_coords(const std::string& s, const FieldPtr& f, int nvars) {
    std::vector<MPoly> coords;
    size_t start = 0;
    while (true) {
        const size_t bar = s.find('|', start);
        const std::string piece = bar == std::string::npos ? s.substr(start) : s.substr(start, bar - start);
        coords.push_back(parse_poly(piece, f, nvars));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return coords;
}

std::string map_coords_string(const ProjMap& m) {
    std::string out;
    for (size_t i = 0; i < m.coords.size(); ++i) {
        if (i) out += " | ";
        out += poly_string(m.coords[i]);
    }
    return out;
}

int64_t to_int(const std::string& s, const char* what) {
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw FormatError(std::string("bad integer for ") + what + ": '" + s + "'");
    }
}

}  // namespace

TripleInput read_triple(std::istream& in) {
    KeyValueReader r(in);
    if (to_int(r.expect("onepoint-format"), "format") != 1) throw FormatError("unsupported format version");
    if (r.expect("kind") != "triple") throw FormatError("not a triple file");
    const int n = int(to_int(r.expect("n"), "n"));
    const FieldPtr field = parse_field_spec(r.expect("field"));
    const MPoly cone = parse_poly(r.expect("cone"), field, n + 1);
    const std::vector<Fq> point = parse_point(r.expect("point"), field);
    return make_triple(n, field, cone, point);
}

std::string triple_file_string(const GoodTriple& t) {
    std::ostringstream os;
    os << "onepoint-format: 1\n";
    os << "kind: triple\n";
    os << "n: " << t.n << "\n";
    os << "field: " << field_spec_string(*t.field) << "\n";
    os << "cone: " << poly_string(t.cone) << "\n";
    os << "point: " << point_string(t.point) << "\n";
    return os.str();
}

std::string chain_file_string(const CoverChain& chain) {
    std::ostringstream os;
    os << "onepoint-format: 1\n";
    os << "kind: coverchain\n";
    os << "seed: " << chain.seed << "\n";
    os << "n: " << chain.n << "\n";
    os << "p: " << chain.p << "\n";
    os << "input-field: " << field_spec_string(*chain.input.field) << "\n";
    os << "input-cone: " << poly_string(chain.input.cone) << "\n";
    os << "input-point: " << point_string(chain.input.point) << "\n";
    os << "input-swap: " << (chain.input_swap ? "z" + std::to_string(*chain.input_swap) : "none") << "\n";
    os << "field: " << field_spec_string(*chain.field) << "\n";
    os << "field-history: ";
    for (size_t i = 0; i < chain.field_history.size(); ++i) {
        if (i) os << ", ";
        os << field_spec_string(*chain.field_history[i]);
    }
    os << "\n";
    os << "steps: " << chain.steps.size() << "\n";
    for (size_t s = 0; s < chain.steps.size(); ++s) {
        const ChainStep& step = chain.steps[s];
        const std::string prefix = "step-" + std::to_string(s) + "-";
        os << prefix << "coord: " << matrix_string(step.coord.mat) << "\n";
        os << prefix << "degree: " << step.step_degree << "\n";
        os << prefix << "map: " << map_coords_string(step.map) << "\n";
        os << prefix << "next-cone: " << poly_string(step.next.cone) << "\n";
        os << prefix << "next-point: " << point_string(step.next.point) << "\n";
    }
    os << "final-normalization: " << matrix_string(chain.final_normalization.mat) << "\n";
    os << "abhyankar: " << map_coords_string(chain.abhyankar) << "\n";
    os << "composite-degree: " << chain.composite.degree << "\n";
    os << "composite: " << map_coords_string(chain.composite) << "\n";
    return os.str();
}

CoverChain read_chain(std::istream& in) {
    KeyValueReader r(in);
    if (to_int(r.expect("onepoint-format"), "format") != 1) throw FormatError("unsupported format version");
    if (r.expect("kind") != "coverchain") throw FormatError("not a coverchain file");
    CoverChain chain;
    chain.seed = uint64_t(to_int(r.expect("seed"), "seed"));
    chain.n = int(to_int(r.expect("n"), "n"));
    chain.p = to_int(r.expect("p"), "p");
    const int nv = chain.n + 1;

    const FieldPtr in_field = parse_field_spec(r.expect("input-field"));
    const MPoly in_cone = parse_poly(r.expect("input-cone"), in_field, nv);
    const std::vector<Fq> in_point = parse_point(r.expect("input-point"), in_field);
    // lenient construction: certification revalidates the triple
    chain.input.n = chain.n;
    chain.input.field = in_field;
    chain.input.index = 0;
    chain.input.cone = in_cone;
    chain.input.point = in_point;
    const std::string swap = r.expect("input-swap");
    if (swap != "none") chain.input_swap = int(to_int(swap.substr(1), "input-swap"));

    chain.field = parse_field_spec(r.expect("field"));
    {
        const std::string hist = r.expect("field-history");
        size_t start = 0;
        while (start < hist.size()) {
            size_t comma = hist.find(", ", start);
            const std::string piece = comma == std::string::npos ? hist.substr(start) : hist.substr(start, comma - start);
            chain.field_history.push_back(parse_field_spec(piece));
            if (comma == std::string::npos) break;
            start = comma + 2;
        }
    }

    const int64_t nsteps = to_int(r.expect("steps"), "steps");
    for (int64_t s = 0; s < nsteps; ++s) {
        const std::string prefix = "step-" + std::to_string(s) + "-";
        ChainStep step;
        auto coord = CoordChange::from_matrix(chain.field, parse_matrix(r.expect(prefix + "coord"), chain.field));
        if (!coord) throw FormatError("singular step coordinate change");
        step.coord = *coord;
        step.step_degree = to_int(r.expect(prefix + "degree"), "degree");
        step.map.n = chain.n;
        step.map.field = chain.field;
        step.map.coords = parse_map_coords(r.expect(prefix + "map"), chain.field, nv);
        step.map.degree = int(step.step_degree);
        if (int(step.map.coords.size()) != nv) throw FormatError("step map arity mismatch");
        step.next.n = chain.n;
        step.next.field = chain.field;
        step.next.index = int(s) + 1;
        step.next.cone = parse_poly(r.expect(prefix + "next-cone"), chain.field, nv);
        step.next.point = parse_point(r.expect(prefix + "next-point"), chain.field);
        step.r0 = step.next.cone;
        chain.steps.push_back(std::move(step));
    }

    auto norm = CoordChange::from_matrix(chain.field, parse_matrix(r.expect("final-normalization"), chain.field));
    if (!norm) throw FormatError("singular final normalization");
    chain.final_normalization = *norm;

    chain.abhyankar.n = chain.n;
    chain.abhyankar.field = chain.field;
    chain.abhyankar.coords = parse_map_coords(r.expect("abhyankar"), chain.field, nv);
    if (int(chain.abhyankar.coords.size()) != nv) throw FormatError("closing map arity mismatch");
    {
        int64_t d = 1, ppow = 1;
        for (int i = 0; i < chain.n; ++i) {
            ppow *= chain.p;
            d += ppow;
        }
        chain.abhyankar.degree = int(d);
    }

    chain.composite.n = chain.n;
    chain.composite.field = chain.field;
    chain.composite.degree = int(to_int(r.expect("composite-degree"), "composite-degree"));
    chain.composite.coords = parse_map_coords(r.expect("composite"), chain.field, nv);
    if (int(chain.composite.coords.size()) != nv) throw FormatError("composite arity mismatch");
    return chain;
}

}  // namespace onepoint
