#include "oplab/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "oplab/acceptance.hpp"
#include "oplab/banach.hpp"
#include "oplab/cbnorm.hpp"
#include "oplab/json_io.hpp"
#include "oplab/report.hpp"
#include "oplab/seqlab.hpp"
#include "oplab/subspaces.hpp"
#include "oplab/xspace.hpp"

namespace oplab {

namespace {

// inline JSON or a path to a JSON file
std::string load_text(const std::string& arg) {
    if (arg.empty()) return arg;
    if (arg.front() == '{' || arg.front() == '[' || arg.front() == '"') return arg;
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open input file \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load_json(const std::string& arg) { return parse_json(load_text(arg)); }

SingularSpectrum spectrum_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("spectrum must be an array of numbers");
    SingularSpectrum s;
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError("spectrum entries must be numbers");
        s.values.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < s.values.size(); ++i)
        if (s.values[i] > s.values[i - 1] + 1e-15)
            throw ParseError("spectrum must be nonincreasing");
    return s;
}

Json genint_values_json(const GenIntSeq& s, std::uint64_t depth) {
    Json arr = Json::array();
    for (GenInt g : s.materialize(depth)) {
        if (g.inf)
            arr.push_back("inf");
        else
            arr.push_back(g.v);
    }
    return arr;
}

struct Ctx {
    std::string alpha, beta, gamma, element, frame, left, right, point, spectrum;
    std::string indices, bits, general;
    std::uint64_t depth = 0, kmax = 8, K = 0, N = 0, nval = 1, trials = 16, kindex = 1;
    std::uint64_t seed = 0;
    int dim = 50;
    double phi_t = -1.0, tol = 1e-9, a = 1.5, growth = 0.0;
    std::string format = "json", side = "inside";
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite-truncation laboratory for weighted operator spaces"};
    app.name("oplab");
    app.require_subcommand(1);
    Ctx c;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--seed", c.seed, "master seed");
        sub->add_option("--tol", c.tol, "comparison tolerance");
        return sub;
    };

    auto* s_norm = add_common(app.add_subcommand("norm", "matricial norm of an element"));
    s_norm->add_option("--alpha", c.alpha)->required();
    s_norm->add_option("--element", c.element)->required();

    auto* s_cb = add_common(app.add_subcommand("cbnorm", "completely bounded norm"));
    s_cb->add_option("--alpha", c.alpha);
    s_cb->add_option("--beta", c.beta);
    s_cb->add_option("--depth", c.depth);
    s_cb->add_option("--general", c.general, "JSON object with matrices A, B, T");

    auto* s_dom = add_common(app.add_subcommand("seq-dom", "weight-sequence domination"));
    s_dom->add_option("--alpha", c.alpha)->required();
    s_dom->add_option("--beta", c.beta)->required();
    s_dom->add_option("--depth", c.depth)->default_val(10000);
    s_dom->add_option("--k-max", c.kmax)->default_val(8);

    auto* s_eq = add_common(app.add_subcommand("seq-equiv", "weight-sequence equivalence"));
    s_eq->add_option("--alpha", c.alpha)->required();
    s_eq->add_option("--beta", c.beta)->required();
    s_eq->add_option("--depth", c.depth)->default_val(10000);
    s_eq->add_option("--k-max", c.kmax)->default_val(8);

    auto* s_star = add_common(app.add_subcommand("star-equiv", "level-sequence equivalence"));
    s_star->add_option("--beta", c.beta)->required();
    s_star->add_option("--gamma", c.gamma)->required();
    s_star->add_option("--depth", c.depth)->default_val(10000);
    s_star->add_option("--k-max", c.kmax)->default_val(8);

    auto* s_n = add_common(app.add_subcommand("reduce-n", "level map of a spectrum entry"));
    s_n->add_option("--spectrum", c.spectrum)->required();
    s_n->add_option("--k", c.kindex)->default_val(1);

    auto* s_y = add_common(app.add_subcommand("reduce-y", "angle frame for a level sequence"));
    s_y->add_option("--beta", c.beta)->required();
    s_y->add_option("--spectrum", c.spectrum)->required();
    s_y->add_option("--depth", c.depth);

    auto* s_phi = add_common(app.add_subcommand("reduce-phi", "block reduction image"));
    s_phi->add_option("--point", c.point)->required();
    s_phi->add_option("--alpha", c.alpha)->required();
    s_phi->add_option("--depth", c.depth)->default_val(100);
    s_phi->add_option("--k-max", c.kmax)->default_val(8);

    auto* s_be = add_common(app.add_subcommand("b-epsilon", "separating grid point"));
    s_be->add_option("--bits", c.bits)->required();
    s_be->add_option("--depth", c.depth)->default_val(32);

    auto* s_spec =
        add_common(app.add_subcommand("subspace-spectrum", "restricted singular values"));
    s_spec->add_option("--frame", c.frame)->required();

    auto* s_wie = add_common(app.add_subcommand("wielandt", "nested-chain minimax check"));
    s_wie->add_option("--frame", c.frame)->required();
    s_wie->add_option("--indices", c.indices)->required();
    s_wie->add_option("--trials", c.trials)->default_val(16);

    auto* s_can = add_common(app.add_subcommand("canonical-basis", "diagonalizing basis"));
    s_can->add_option("--frame", c.frame)->required();

    auto* s_sub = add_common(app.add_subcommand("subbasis", "schedule embedding"));
    s_sub->add_option("--frame", c.frame)->required();
    s_sub->add_option("--a", c.a)->default_val(1.5);
    s_sub->add_option("--growth", c.growth)->default_val(0.0);

    auto* s_nc = add_common(app.add_subcommand("noncomplemented", "projection lower bound"));
    s_nc->add_option("--alpha", c.alpha)->required();
    s_nc->add_option("--beta", c.beta)->required();
    s_nc->add_option("--K", c.K)->default_val(0);
    s_nc->add_option("--N", c.N)->required();

    auto* s_dist = add_common(app.add_subcommand("distortion", "relabeling distortion bound"));
    s_dist->add_option("--n", c.nval)->required();
    s_dist->add_option("--side", c.side)->check(CLI::IsMember({"inside", "outside"}));

    auto* s_bc = add_common(app.add_subcommand("banach-c", "scalar-projection invariant"));
    s_bc->add_option("--frame", c.frame);
    s_bc->add_option("--phi-t", c.phi_t);
    s_bc->add_option("--dim", c.dim)->default_val(50);

    auto* s_iso = add_common(app.add_subcommand("banach-isometric", "isometry decision"));
    s_iso->add_option("--left", c.left)->required();
    s_iso->add_option("--right", c.right)->required();

    auto* s_verify = app.add_subcommand("verify", "run the acceptance suites");
    (void)s_verify;

    std::vector<const char*> argv;
    argv.push_back("oplab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 64;
    }

    try {
        RunReport r;
        r.seed = c.seed;

        if (s_norm->parsed()) {
            r.command = "norm";
            WeightSequence a = weight_sequence_from_json(load_json(c.alpha));
            MatElement x = mat_element_from_json(load_json(c.element));
            r.inputs["alpha"] = weight_sequence_to_json(a);
            r.inputs["element"] = mat_element_to_json(x);
            r.outputs["value"] = xd_norm(a, x);
            r.outputs["concrete"] = concrete_rep_norm(a, x);
        } else if (s_cb->parsed()) {
            r.command = "cbnorm";
            CbNormResult res;
            if (!c.general.empty()) {
                Json g = load_json(c.general);
                ComplexMatrix A = complex_matrix_from_json(g.at("A"));
                ComplexMatrix B = complex_matrix_from_json(g.at("B"));
                ComplexMatrix T = complex_matrix_from_json(g.at("T"));
                r.inputs["general"] = g;
                res = cb_norm_general(A, B, T, derive_seed(c.seed, "cbnorm/general"));
            } else {
                if (c.alpha.empty() || c.beta.empty() || c.depth == 0) {
                    err << "cbnorm needs either --general or --alpha/--beta/--depth\n";
                    return 64;
                }
                WeightSequence a = weight_sequence_from_json(load_json(c.alpha));
                WeightSequence b = weight_sequence_from_json(load_json(c.beta));
                r.inputs["alpha"] = weight_sequence_to_json(a);
                r.inputs["beta"] = weight_sequence_to_json(b);
                r.inputs["depth"] = c.depth;
                res = cb_norm_diag_identity(a, b, c.depth);
            }
            r.outputs["value"] = res.value;
            r.outputs["method"] = res.method;
            r.outputs["certified"] = res.certified;
            r.outputs["upper_bound"] = res.upper_bound;
            if (res.witness.size() > 0)
                r.certificates["witness"] = complex_matrix_to_json(res.witness);
        } else if (s_dom->parsed() || s_eq->parsed()) {
            bool dom = s_dom->parsed();
            r.command = dom ? "seq-dom" : "seq-equiv";
            WeightSequence a = weight_sequence_from_json(load_json(c.alpha));
            WeightSequence b = weight_sequence_from_json(load_json(c.beta));
            r.inputs["alpha"] = weight_sequence_to_json(a);
            r.inputs["beta"] = weight_sequence_to_json(b);
            r.inputs["depth"] = c.depth;
            r.inputs["k_max"] = c.kmax;
            EquivVerdict v = dom ? dominates(a, b, c.depth, c.kmax)
                                 : seq_equivalent(a, b, c.depth, c.kmax);
            r.outputs["verdict"] = verdict_to_json(v);
        } else if (s_star->parsed()) {
            r.command = "star-equiv";
            GenIntSeq b = genint_seq_from_json(load_json(c.beta));
            GenIntSeq g = genint_seq_from_json(load_json(c.gamma));
            r.inputs["beta"] = genint_seq_to_json(b);
            r.inputs["gamma"] = genint_seq_to_json(g);
            r.inputs["depth"] = c.depth;
            r.inputs["k_max"] = c.kmax;
            r.outputs["verdict"] = verdict_to_json(star_equiv(b, g, c.depth, c.kmax));
        } else if (s_n->parsed()) {
            r.command = "reduce-n";
            SingularSpectrum s = spectrum_from_json(load_json(c.spectrum));
            r.inputs["spectrum"] = s.values;
            r.inputs["k"] = c.kindex;
            GenInt v = n_map(s, c.kindex);
            if (v.inf)
                r.outputs["value"] = "inf";
            else
                r.outputs["value"] = v.v;
        } else if (s_y->parsed()) {
            r.command = "reduce-y";
            GenIntSeq b = genint_seq_from_json(load_json(c.beta));
            SingularSpectrum s = spectrum_from_json(load_json(c.spectrum));
            std::uint64_t depth = c.depth ? c.depth : s.values.size();
            r.inputs["beta"] = genint_seq_to_json(b);
            r.inputs["spectrum"] = s.values;
            r.inputs["depth"] = depth;
            Json arr = Json::array();
            for (const auto& a : y_map(b, s, depth))
                arr.push_back({{"index", a.index}, {"sin", a.sin_phi}, {"cos", a.cos_phi}});
            r.outputs["angles"] = arr;
        } else if (s_phi->parsed()) {
            r.command = "reduce-phi";
            XiPoint p = xi_point_from_json(load_json(c.point));
            auto a = std::make_shared<const GenIntSeq>(genint_seq_from_json(load_json(c.alpha)));
            r.inputs["point"] = xi_point_to_json(p);
            r.inputs["alpha"] = genint_seq_to_json(*a);
            r.inputs["depth"] = c.depth;
            GenIntSeq image = borel2_phi(p, a, c.depth, c.kmax);
            r.outputs["values"] = genint_values_json(image, c.depth);
            Json blocks = Json::array();
            for (const auto& blk : image.tail().blocks->blocks())
                blocks.push_back({{"p", blk.p.str()}, {"q", blk.q.str()}});
            r.certificates["blocks"] = blocks;
        } else if (s_be->parsed()) {
            r.command = "b-epsilon";
            Json bj = load_json(c.bits);
            if (!bj.is_array() || bj.empty()) throw ParseError("--bits must be a JSON array");
            std::vector<bool> bits;
            for (const auto& v : bj) bits.push_back(v.get<int>() != 0);
            r.inputs["bits"] = bj;
            XiPoint p = b_epsilon(bits);
            r.outputs["point"] = xi_point_to_json(p);
            r.outputs["sample"] = p.materialize(c.depth);
        } else if (s_spec->parsed()) {
            r.command = "subspace-spectrum";
            SubspaceFrame f = subspace_frame_from_json(load_json(c.frame));
            r.inputs["frame"] = subspace_frame_to_json(f);
            r.outputs["spectrum"] = restricted_spectrum(f).values;
        } else if (s_wie->parsed()) {
            r.command = "wielandt";
            SubspaceFrame f = subspace_frame_from_json(load_json(c.frame));
            Json ij = load_json(c.indices);
            if (!ij.is_array() || ij.empty())
                throw ParseError("--indices must be a nonempty JSON array");
            std::vector<std::size_t> idx;
            for (const auto& v : ij) idx.push_back(v.get<std::size_t>());
            r.inputs["frame"] = subspace_frame_to_json(f);
            r.inputs["indices"] = ij;
            auto w = wielandt_check(f, idx, static_cast<int>(c.trials),
                                    derive_seed(c.seed, "wielandt"));
            r.outputs["closed_form"] = w.closed_form;
            r.outputs["best_oracle"] = w.best_oracle;
        } else if (s_can->parsed()) {
            r.command = "canonical-basis";
            SubspaceFrame f = subspace_frame_from_json(load_json(c.frame));
            r.inputs["frame"] = subspace_frame_to_json(f);
            auto cb = canonical_basis(f);
            r.outputs["beta"] = cb.beta.prefix();
            r.outputs["averaging_residual"] = cb.averaging_residual;
            r.outputs["exact_average"] = cb.exact_average;
            r.certificates["T"] = complex_matrix_to_json(cb.T);
        } else if (s_sub->parsed()) {
            r.command = "subbasis";
            SubspaceFrame f = subspace_frame_from_json(load_json(c.frame));
            SubbasisSchedule sched{c.a, c.growth};
            r.inputs["frame"] = subspace_frame_to_json(f);
            r.inputs["a"] = c.a;
            auto emb = subbasis_embed(sched, f);
            r.outputs["pi"] = emb.pi;
            r.outputs["distortion"] = emb.distortion;
        } else if (s_nc->parsed()) {
            r.command = "noncomplemented";
            WeightSequence a = weight_sequence_from_json(load_json(c.alpha));
            WeightSequence b = weight_sequence_from_json(load_json(c.beta));
            r.inputs["alpha"] = weight_sequence_to_json(a);
            r.inputs["beta"] = weight_sequence_to_json(b);
            r.inputs["K"] = c.K;
            r.inputs["N"] = c.N;
            auto nb = noncomplemented_bound(a, b, c.K, c.N);
            r.outputs["bound"] = nb.bound;
            r.outputs["divergence_certified"] = nb.divergence_certified;
        } else if (s_dist->parsed()) {
            r.command = "distortion";
            r.inputs["n"] = c.nval;
            r.inputs["side"] = c.side;
            r.outputs["value"] = subsequence_distortion(
                c.nval, c.side == "inside" ? SubsequenceCase::Inside : SubsequenceCase::Outside);
        } else if (s_bc->parsed()) {
            r.command = "banach-c";
            std::unique_ptr<BanachFrame> f;
            if (!c.frame.empty()) {
                f = std::make_unique<BanachFrame>(banach_frame_from_json(load_json(c.frame)));
            } else if (c.phi_t >= 0.0) {
                f = std::make_unique<BanachFrame>(make_Phi(c.phi_t, c.dim));
                r.inputs["phi_t"] = c.phi_t;
                r.inputs["dim"] = c.dim;
            } else {
                err << "banach-c needs --frame or --phi-t\n";
                return 64;
            }
            auto ci = c_invariant(*f);
            r.outputs["c"] = ci.c;
            r.certificates["maximizer"] = ci.maximizer;
        } else if (s_iso->parsed()) {
            r.command = "banach-isometric";
            BanachFrame y = banach_frame_from_json(load_json(c.left));
            BanachFrame z = banach_frame_from_json(load_json(c.right));
            r.inputs["left"] = banach_frame_to_json(y);
            r.inputs["right"] = banach_frame_to_json(z);
            double cy = c_invariant(y).c, cz = c_invariant(z).c;
            r.outputs["c_left"] = cy;
            r.outputs["c_right"] = cz;
            r.outputs["isometric"] = isometric(y, z, c.tol);
        } else if (s_verify->parsed()) {
            return report_acceptance(out);
        }

        out << r.render(c.format);
        return 0;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 65;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace oplab
