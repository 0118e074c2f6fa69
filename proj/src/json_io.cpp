#include "oplab/json_io.hpp"

namespace oplab {

namespace {

double require_number(const Json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
    return j.get<double>();
}

std::uint64_t require_count(const Json& j, const char* what) {
    if (!j.is_number_unsigned())
        throw ParseError(std::string("expected a nonnegative integer for ") + what);
    return j.get<std::uint64_t>();
}

const Json& require_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON document");
    return j;
}

WeightSequence weight_sequence_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("weight sequence must be an object");
    std::vector<double> prefix;
    if (j.contains("prefix"))
        for (const auto& v : j.at("prefix")) prefix.push_back(require_number(v, "prefix"));
    Tail tail;
    if (j.contains("tail")) {
        const Json& t = j.at("tail");
        std::string kind = require_field(t, "kind").get<std::string>();
        if (kind == "zero") {
            tail.kind = TailKind::Zero;
        } else if (kind == "blocks") {
            tail.kind = TailKind::Blocks;
            for (const auto& b : require_field(t, "blocks"))
                tail.blocks.push_back({require_count(require_field(b, "count"), "count"),
                                       require_number(require_field(b, "value"), "value")});
        } else if (kind == "notsubbasis") {
            tail.kind = TailKind::NotSubbasis;
            tail.beta_role = t.value("role", std::string("alpha")) == "beta";
        } else if (kind == "subbasis") {
            tail.kind = TailKind::Subbasis;
            tail.a = t.value("a", 1.5);
            tail.growth = t.value("growth", 0.0);
        } else if (kind == "power") {
            tail.kind = TailKind::Power;
            tail.coeff = t.value("coeff", 1.0);
            tail.power = t.value("power", 0.5);
        } else {
            throw ParseError("unknown weight tail kind \"" + kind + "\"");
        }
    }
    bool sorted = false;
    if (j.contains("flags"))
        for (const auto& f : j.at("flags"))
            if (f.get<std::string>() == "sorted") sorted = true;
    try {
        return WeightSequence(std::move(prefix), std::move(tail), sorted);
    } catch (const InvalidInputError& e) {
        throw ParseError(std::string("invalid weight sequence: ") + e.what());
    }
}

Json weight_sequence_to_json(const WeightSequence& w) {
    Json j;
    j["prefix"] = w.prefix();
    Json t;
    switch (w.tail().kind) {
        case TailKind::Zero:
            t["kind"] = "zero";
            break;
        case TailKind::Blocks: {
            t["kind"] = "blocks";
            Json arr = Json::array();
            for (const auto& b : w.tail().blocks)
                arr.push_back({{"count", b.count}, {"value", b.value}});
            t["blocks"] = arr;
            break;
        }
        case TailKind::NotSubbasis:
            t["kind"] = "notsubbasis";
            t["role"] = w.tail().beta_role ? "beta" : "alpha";
            break;
        case TailKind::Subbasis:
            t["kind"] = "subbasis";
            t["a"] = w.tail().a;
            t["growth"] = w.tail().growth;
            break;
        case TailKind::Power:
            t["kind"] = "power";
            t["coeff"] = w.tail().coeff;
            t["power"] = w.tail().power;
            break;
    }
    j["tail"] = t;
    Json flags = Json::array();
    if (w.sorted_flag()) flags.push_back("sorted");
    j["flags"] = flags;
    return j;
}

namespace {

GenInt genint_from_json(const Json& v) {
    if (v.is_string() && v.get<std::string>() == "inf") return GenInt::infinity();
    if (v.is_number_unsigned()) return GenInt::of(v.get<std::uint64_t>());
    throw ParseError("generalized integer must be a nonnegative integer or \"inf\"");
}

Json genint_to_json(GenInt g) {
    if (g.inf) return "inf";
    return g.v;
}

}  // namespace

GenIntSeq genint_seq_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("integer sequence must be an object");
    std::vector<GenInt> prefix;
    if (j.contains("prefix"))
        for (const auto& v : j.at("prefix")) prefix.push_back(genint_from_json(v));
    GenTail tail;
    if (j.contains("tail")) {
        const Json& t = j.at("tail");
        std::string kind = require_field(t, "kind").get<std::string>();
        if (kind == "const") {
            tail.kind = GenTailKind::Const;
            tail.value = genint_from_json(require_field(t, "value"));
        } else if (kind == "arith") {
            tail.kind = GenTailKind::Arith;
            tail.v0 = require_count(require_field(t, "v0"), "v0");
            tail.step = require_count(require_field(t, "step"), "step");
        } else if (kind == "log4") {
            tail.kind = GenTailKind::Log4;
        } else {
            throw ParseError("unknown integer tail kind \"" + kind + "\"");
        }
    }
    try {
        return GenIntSeq(std::move(prefix), std::move(tail));
    } catch (const InvalidInputError& e) {
        throw ParseError(std::string("invalid integer sequence: ") + e.what());
    }
}

Json genint_seq_to_json(const GenIntSeq& s) {
    Json j;
    Json prefix = Json::array();
    for (GenInt g : s.prefix()) prefix.push_back(genint_to_json(g));
    j["prefix"] = prefix;
    Json t;
    switch (s.tail().kind) {
        case GenTailKind::Const:
            t["kind"] = "const";
            t["value"] = genint_to_json(s.tail().value);
            break;
        case GenTailKind::Arith:
            t["kind"] = "arith";
            t["v0"] = s.tail().v0;
            t["step"] = s.tail().step;
            break;
        case GenTailKind::Log4:
            t["kind"] = "log4";
            break;
        case GenTailKind::PhiImage:
            t["kind"] = "phi-image";
            break;
    }
    j["tail"] = t;
    return j;
}

XiPoint xi_point_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("grid point must be an object");
    std::vector<std::uint64_t> prefix;
    if (j.contains("prefix"))
        for (const auto& v : j.at("prefix")) prefix.push_back(require_count(v, "prefix"));
    XiTail tail;
    if (j.contains("tail")) {
        const Json& t = j.at("tail");
        std::string kind = require_field(t, "kind").get<std::string>();
        if (kind == "zero") {
            tail.kind = XiTailKind::Zero;
        } else if (kind == "cap") {
            tail.kind = XiTailKind::Cap;
        } else if (kind == "b-epsilon") {
            tail.kind = XiTailKind::BEpsilon;
            for (const auto& b : require_field(t, "bits"))
                tail.bits.push_back(b.get<bool>());
            tail.m = tail.bits.size();
        } else {
            throw ParseError("unknown grid tail kind \"" + kind + "\"");
        }
    }
    try {
        return XiPoint(std::move(prefix), std::move(tail));
    } catch (const InvalidInputError& e) {
        throw ParseError(std::string("invalid grid point: ") + e.what());
    }
}

Json xi_point_to_json(const XiPoint& p) {
    Json j;
    j["prefix"] = p.prefix();
    Json t;
    switch (p.tail().kind) {
        case XiTailKind::Zero:
            t["kind"] = "zero";
            break;
        case XiTailKind::Cap:
            t["kind"] = "cap";
            break;
        case XiTailKind::BEpsilon: {
            t["kind"] = "b-epsilon";
            Json bits = Json::array();
            for (bool b : p.tail().bits) bits.push_back(b);
            t["bits"] = bits;
            break;
        }
    }
    j["tail"] = t;
    return j;
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array");
    std::size_t rows = j.size();
    std::size_t cols = j.at(0).size();
    if (cols == 0) throw ParseError("matrix rows must be nonempty");
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw ParseError("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& e = row.at(c);
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = std::complex<double>(require_number(e.at(0), "re"),
                                               require_number(e.at(1), "im"));
            } else {
                throw ParseError("matrix entry must be a number or an [re, im] pair");
            }
        }
    }
    return m;
}

MatElement mat_element_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("element must be an object");
    MatElement x;
    x.n = static_cast<int>(require_count(require_field(j, "n"), "n"));
    auto read = [&](const char* key, std::vector<std::pair<std::uint64_t, ComplexMatrix>>& out) {
        if (!j.contains(key)) return;
        for (const auto& c : j.at(key))
            out.emplace_back(require_count(require_field(c, "index"), "index"),
                             complex_matrix_from_json(require_field(c, "matrix")));
    };
    read("e", x.e_coeffs);
    read("f", x.f_coeffs);
    try {
        x.validate();
    } catch (const InvalidInputError& e) {
        throw ParseError(std::string("invalid element: ") + e.what());
    }
    return x;
}

Json mat_element_to_json(const MatElement& x) {
    Json j;
    j["n"] = x.n;
    auto write = [&](const char* key,
                     const std::vector<std::pair<std::uint64_t, ComplexMatrix>>& cs) {
        Json arr = Json::array();
        for (const auto& [i, m] : cs)
            arr.push_back({{"index", i}, {"matrix", complex_matrix_to_json(m)}});
        j[key] = arr;
    };
    write("e", x.e_coeffs);
    write("f", x.f_coeffs);
    return j;
}

SubspaceFrame subspace_frame_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("frame must be an object");
    WeightSequence amb = weight_sequence_from_json(require_field(j, "ambient"));
    std::uint64_t depth = require_count(require_field(j, "depth"), "depth");
    const Json& cols = require_field(j, "columns");
    if (!cols.is_array() || cols.empty()) throw ParseError("frame needs columns");
    ComplexMatrix basis(static_cast<Eigen::Index>(2 * depth),
                        static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Json& col = cols.at(c);
        if (!col.is_array() || col.size() != 2 * depth)
            throw ParseError("frame columns must have 2 * depth entries");
        for (std::size_t r = 0; r < col.size(); ++r) {
            const Json& e = col.at(r);
            if (e.is_number())
                basis(r, c) = e.get<double>();
            else if (e.is_array() && e.size() == 2)
                basis(r, c) = std::complex<double>(require_number(e.at(0), "re"),
                                                   require_number(e.at(1), "im"));
            else
                throw ParseError("frame entry must be a number or an [re, im] pair");
        }
    }
    try {
        return SubspaceFrame(std::move(amb), depth, basis);
    } catch (const Error& e) {
        throw ParseError(std::string("invalid frame: ") + e.what());
    }
}

Json subspace_frame_to_json(const SubspaceFrame& f) {
    Json j;
    j["ambient"] = weight_sequence_to_json(f.ambient);
    j["depth"] = f.depth;
    Json cols = Json::array();
    for (Eigen::Index c = 0; c < f.basis.cols(); ++c) {
        Json col = Json::array();
        for (Eigen::Index r = 0; r < f.basis.rows(); ++r)
            col.push_back({f.basis(r, c).real(), f.basis(r, c).imag()});
        cols.push_back(col);
    }
    j["columns"] = cols;
    return j;
}

BanachFrame banach_frame_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("frame must be an object");
    int d = static_cast<int>(require_count(require_field(j, "dim"), "dim"));
    const Json& cols = require_field(j, "columns");
    if (!cols.is_array() || cols.empty()) throw ParseError("frame needs columns");
    RealMatrix basis(d + 1, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Json& col = cols.at(c);
        if (!col.is_array() || col.size() != static_cast<std::size_t>(d + 1))
            throw ParseError("frame columns must have 1 + dim entries");
        for (std::size_t r = 0; r < col.size(); ++r)
            basis(r, c) = require_number(col.at(r), "entry");
    }
    try {
        return BanachFrame(d, std::move(basis));
    } catch (const Error& e) {
        throw ParseError(std::string("invalid frame: ") + e.what());
    }
}

Json banach_frame_to_json(const BanachFrame& f) {
    Json j;
    j["dim"] = f.d;
    Json cols = Json::array();
    for (Eigen::Index c = 0; c < f.basis.cols(); ++c) {
        Json col = Json::array();
        for (Eigen::Index r = 0; r < f.basis.rows(); ++r) col.push_back(f.basis(r, c));
        cols.push_back(col);
    }
    j["columns"] = cols;
    return j;
}

Json verdict_to_json(const EquivVerdict& v) {
    Json j;
    switch (v.kind) {
        case VerdictKind::Equivalent:
            j["kind"] = "equivalent";
            j["K"] = v.K;
            j["witness_set"] = v.witness_set;
            j["witness_note"] = v.witness_note;
            break;
        case VerdictKind::NotEquivalent: {
            j["kind"] = "not-equivalent";
            j["witness_note"] = v.witness_note;
            Json cert = Json::array();
            for (const auto& [d, m] : v.certificate)
                cert.push_back({{"depth", d}, {"forced_mass", m}});
            j["certificate"] = cert;
            break;
        }
        case VerdictKind::Inconclusive:
            j["kind"] = "inconclusive";
            break;
    }
    j["depth"] = v.depth;
    return j;
}

}  // namespace oplab
