// kkcalc: command-line front end for the exact K-theory / KK-group engine.
//
// Single-command mode:   kkcalc kk --a "[Z/2;0]" --b "[Z;0]" --deg 1
// Job-file mode:         kkcalc --job work.json
//
// Output is either aligned text (default) or JSON (--format json) with stable
// field names; identical inputs produce byte-identical JSON.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kkcalc/kkcalc.hpp"

using json = nlohmann::ordered_json;
using namespace kkcalc;

namespace {

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

json int_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();  // too large for a JSON number; emit decimal text
}

json group_json(const FgaGroup& g) {
    json j;
    j["free_rank"] = g.free_rank;
    json t = json::array();
    for (const Int& d : g.torsion) t.push_back(int_json(d));
    j["torsion"] = std::move(t);
    return j;
}

json graded_json(const GradedGroup& g) {
    json j;
    j["even"] = group_json(g.even);
    j["odd"] = group_json(g.odd);
    return j;
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json map_json(const GroupMap& f) {
    json j;
    j["domain"] = group_json(f.domain());
    j["codomain"] = group_json(f.codomain());
    j["matrix"] = matrix_json(f.matrix());
    return j;
}

json graded_map_json(const GradedMap& f) {
    json j;
    j["degree"] = f.degree;
    j["from_even"] = matrix_json(f.from_even.matrix());
    j["from_odd"] = matrix_json(f.from_odd.matrix());
    return j;
}

json elem_json(const Elem& e) {
    json a = json::array();
    for (const Int& v : e) a.push_back(int_json(v));
    return a;
}

// ---------------------------------------------------------------------------
// text rendering
// ---------------------------------------------------------------------------

struct TextReport {
    std::vector<std::pair<std::string, std::string>> rows;
    void kv(std::string key, std::string value) { rows.push_back({std::move(key), std::move(value)}); }
    void kv(std::string key, bool v) { kv(std::move(key), std::string(v ? "true" : "false")); }
};

bool color_enabled() {
    if (std::getenv("NO_COLOR") != nullptr) return false;
    return isatty(1);
}

void print_text(const TextReport& rep, std::ostream& os) {
    std::size_t w = 0;
    for (const auto& [k, v] : rep.rows) w = std::max(w, k.size());
    const bool color = color_enabled();
    for (const auto& [k, v] : rep.rows) {
        std::string value = v;
        if (color && v == "true") value = "\033[32mtrue\033[0m";
        if (color && v == "false") value = "\033[31mfalse\033[0m";
        os << k << std::string(w - k.size(), ' ') << " = " << value << "\n";
    }
}

// ---------------------------------------------------------------------------
// named environment (job files)
// ---------------------------------------------------------------------------

struct Env {
    std::map<std::string, FgaGroup> groups;
    std::map<std::string, GradedGroup> graded;
    std::map<std::string, GroupMap> maps;
};

FgaGroup resolve_group(const Env& env, const std::string& ref) {
    if (auto it = env.groups.find(ref); it != env.groups.end()) return it->second;
    if (env.graded.count(ref))
        throw ValidationError("'" + ref + "' names a graded group where a plain group is needed");
    return parse_group(ref);
}

GradedGroup resolve_graded(const Env& env, const std::string& ref) {
    if (auto it = env.graded.find(ref); it != env.graded.end()) return it->second;
    if (env.groups.count(ref))
        throw ValidationError("'" + ref + "' names a plain group where a graded group is needed");
    return parse_graded(ref);
}

const GroupMap& resolve_map(const Env& env, const std::string& ref) {
    auto it = env.maps.find(ref);
    if (it == env.maps.end()) throw ValidationError("unknown map '" + ref + "'");
    return it->second;
}

Int json_to_int(const json& v) {
    if (v.is_number_integer()) return Int(v.get<std::int64_t>());
    if (v.is_string()) return Int(v.get<std::string>());
    throw ValidationError("expected an integer");
}

Elem json_to_elem(const json& v) {
    if (!v.is_array()) throw ValidationError("expected an array of integers");
    Elem e;
    for (const json& x : v) e.push_back(json_to_int(x));
    return e;
}

IntMatrix json_to_matrix(const json& v, std::size_t rows, std::size_t cols) {
    if (!v.is_array() || v.size() != rows)
        throw ValidationError("matrix must have one row per codomain generator (" +
                              std::to_string(rows) + " rows)");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols)
            throw ValidationError("matrix row " + std::to_string(i) + " must have " +
                                  std::to_string(cols) + " entries");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = json_to_int(v[i][j]);
    }
    return m;
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ValidationError("unknown field '" + item.key() + "' in " + where);
}

std::string need_string(const json& cmd, const char* key) {
    if (!cmd.contains(key) || !cmd[key].is_string())
        throw ValidationError(std::string("command needs string field '") + key + "'");
    return cmd[key].get<std::string>();
}

int need_degree(const json& cmd) {
    if (!cmd.contains("deg") || !cmd["deg"].is_number_integer())
        throw ValidationError("command needs integer field 'deg'");
    int d = cmd["deg"].get<int>();
    if (d != 0 && d != 1) throw ValidationError("'deg' must be 0 or 1");
    return d;
}

// ---------------------------------------------------------------------------
// command handlers: json command object -> (json result, text report)
// ---------------------------------------------------------------------------

struct Output {
    json data;
    TextReport text;
};

bool g_primary_form = false;

std::string show(const FgaGroup& g) {
    return g_primary_form ? print_group_primary(g) : print_group(g);
}
std::string show(const GradedGroup& g) { return print_graded(g, g_primary_form); }

json uct_json(const UctResult& u) {
    json j;
    j["degree"] = u.degree;
    j["total"] = group_json(u.total);
    j["hom_part"] = group_json(u.hom_part);
    j["ext_part"] = group_json(u.ext_part);
    j["closure_of_zero"] = group_json(u.closure_of_zero);
    j["hausdorff_quotient"] = group_json(u.hausdorff_quotient);
    return j;
}

void uct_text(TextReport& t, const UctResult& u) {
    t.kv("KK_" + std::to_string(u.degree), show(u.total));
    t.kv("Hom part", show(u.hom_part));
    t.kv("Ext part", show(u.ext_part));
    t.kv("closure of zero", show(u.closure_of_zero));
    t.kv("Hausdorff quotient", show(u.hausdorff_quotient));
}

Output run_kk(const Env& env, const json& cmd) {
    UctResult u = kk(resolve_graded(env, need_string(cmd, "a")),
                     resolve_graded(env, need_string(cmd, "b")), need_degree(cmd));
    Output out;
    out.data = uct_json(u);
    uct_text(out.text, u);
    return out;
}

Output run_kdual(const Env& env, const json& cmd) {
    UctResult u = k_dual(resolve_graded(env, need_string(cmd, "a")), need_degree(cmd));
    Output out;
    out.data = uct_json(u);
    out.text.kv("K^" + std::to_string(u.degree), show(u.total));
    out.text.kv("Hom part", show(u.hom_part));
    out.text.kv("Ext part", show(u.ext_part));
    return out;
}

Output run_decompose(const Env& env, const json& cmd) {
    GradedGroup k = resolve_graded(env, need_string(cmd, "k"));
    RealizationRecord rec = realize_torsion(k);
    Output out;
    out.data["input"] = graded_json(rec.input);
    out.data["torsion"] = graded_json(rec.k_of_As);
    out.data["free"] = graded_json(rec.k_of_Aq);
    out.data["suspension_of_torsion"] = graded_json(rec.k_of_SAs);
    out.data["inclusion"] = graded_map_json(rec.inclusion);
    out.data["projection"] = graded_map_json(rec.projection);
    out.data["summand"] = rec.summand;
    if (rec.retraction) out.data["retraction"] = graded_map_json(*rec.retraction);
    out.text.kv("input", show(rec.input));
    out.text.kv("torsion part", show(rec.k_of_As));
    out.text.kv("free part", show(rec.k_of_Aq));
    out.text.kv("summand", rec.summand);
    return out;
}

Output run_primary(const Env& env, const json& cmd) {
    GradedGroup k = resolve_graded(env, need_string(cmd, "k"));
    PrimaryDecomposition pd = primary_decomposition(k);
    Output out;
    json parts = json::array();
    for (const auto& [p, part] : pd.parts) {
        json e;
        e["prime"] = int_json(p);
        e["group"] = graded_json(part);
        parts.push_back(std::move(e));
        out.text.kv("p = " + p.str(), show(part));
    }
    out.data["parts"] = std::move(parts);
    out.data["sum"] = graded_json(pd.sum);
    out.data["iso"] = graded_map_json(pd.iso);
    out.data["iso_verified"] = true;  // construction throws otherwise
    if (pd.parts.empty()) out.text.kv("parts", std::string("none (trivial group)"));
    out.text.kv("iso verified", true);
    return out;
}

Output run_realize(const Env& env, const json& cmd) {
    GradedGroup k = resolve_graded(env, need_string(cmd, "k"));
    GradedSubgroup sub{k, {}, {}};
    if (cmd.contains("gens_even"))
        for (const json& e : cmd["gens_even"]) sub.gens_even.push_back(json_to_elem(e));
    if (cmd.contains("gens_odd"))
        for (const json& e : cmd["gens_odd"]) sub.gens_odd.push_back(json_to_elem(e));
    RealizationRecord rec = realize(k, sub);
    Output out;
    out.data["input"] = graded_json(rec.input);
    out.data["k_of_As"] = graded_json(rec.k_of_As);
    out.data["k_of_Aq"] = graded_json(rec.k_of_Aq);
    out.data["k_of_SAs"] = graded_json(rec.k_of_SAs);
    out.data["inclusion"] = graded_map_json(rec.inclusion);
    out.data["projection"] = graded_map_json(rec.projection);
    out.data["rows_exact"] = true;      // ShortExactSeq construction is the check
    out.data["diagram_commutes"] = true;  // LadderDiagram construction is the check
    out.data["summand"] = rec.summand;
    if (rec.retraction) out.data["retraction"] = graded_map_json(*rec.retraction);
    if (rec.sum_iso) out.data["sum_iso"] = graded_map_json(*rec.sum_iso);
    out.text.kv("input", show(rec.input));
    out.text.kv("K(A_s)", show(rec.k_of_As));
    out.text.kv("K(A_q)", show(rec.k_of_Aq));
    out.text.kv("K(SA_s)", show(rec.k_of_SAs));
    out.text.kv("rows exact", true);
    out.text.kv("diagram commutes", true);
    out.text.kv("summand", rec.summand);
    return out;
}

Output run_kunneth(const Env& env, const json& cmd, bool with_coefficients) {
    GradedGroup a = resolve_graded(env, need_string(cmd, "a"));
    KunnethResult r = with_coefficients
                          ? coefficients(a, resolve_group(env, need_string(cmd, "g")),
                                         need_degree(cmd))
                          : kunneth_product(a, resolve_graded(env, need_string(cmd, "b")),
                                            need_degree(cmd));
    Output out;
    out.data["degree"] = r.degree;
    out.data["total"] = group_json(r.total);
    out.data["tensor_part"] = group_json(r.tensor_part);
    out.data["tor_part"] = group_json(r.tor_part);
    out.data["alpha_iso"] = r.alpha_iso;
    out.text.kv("K_" + std::to_string(r.degree), show(r.total));
    out.text.kv("tensor part", show(r.tensor_part));
    out.text.kv("Tor part", show(r.tor_part));
    out.text.kv("alpha iso", r.alpha_iso);
    return out;
}

Output run_dual(const Env& env, const json& cmd) {
    FgaGroup g = resolve_group(env, need_string(cmd, "g"));
    FgaGroup d = pontryagin_dual(g);
    Output out;
    out.data["input"] = group_json(g);
    out.data["dual"] = group_json(d);
    out.text.kv("input", show(g));
    out.text.kv("Pontryagin dual", show(d));
    return out;
}

Output run_fourway(const Env& env, const json& cmd) {
    FourWaySplit s = four_way(resolve_graded(env, need_string(cmd, "a")),
                              resolve_graded(env, need_string(cmd, "b")), need_degree(cmd));
    Output out;
    out.data["tt"] = uct_json(s.tt);
    out.data["tf"] = uct_json(s.tf);
    out.data["ft"] = uct_json(s.ft);
    out.data["ff"] = uct_json(s.ff);
    out.data["assembled"] = group_json(s.assembled);
    out.data["direct"] = group_json(s.direct);
    out.data["matches"] = s.matches;
    out.text.kv("KK(A_t,B_t)", show(s.tt.total));
    out.text.kv("KK(A_t,B_f)", show(s.tf.total));
    out.text.kv("KK(A_f,B_t)", show(s.ft.total));
    out.text.kv("KK(A_f,B_f)", show(s.ff.total));
    out.text.kv("assembled", show(s.assembled));
    out.text.kv("direct", show(s.direct));
    out.text.kv("matches", s.matches);
    return out;
}

Output run_split(const Env& env, const json& cmd, bool torsion_side) {
    SplitSequenceReport rep =
        torsion_side ? split_torsion_restriction(resolve_graded(env, need_string(cmd, "a")),
                                                 resolve_graded(env, need_string(cmd, "b")))
                     : split_free_projection(resolve_graded(env, need_string(cmd, "a")),
                                             resolve_graded(env, need_string(cmd, "b")));
    Output out;
    out.data["onto"] = rep.onto;
    json degs = json::array();
    for (int j = 0; j < 2; ++j) {
        json d;
        d["degree"] = j;
        d["left"] = uct_json(rep.degrees[j].left);
        d["middle"] = uct_json(rep.degrees[j].middle);
        d["right"] = uct_json(rep.degrees[j].right);
        degs.push_back(std::move(d));
        out.text.kv("degree " + std::to_string(j),
                    "0 -> " + show(rep.degrees[j].left.total) + " -> " +
                        show(rep.degrees[j].middle.total) + " -> " +
                        show(rep.degrees[j].right.total) + " -> 0");
    }
    out.data["degrees"] = std::move(degs);
    out.text.kv("onto", rep.onto);
    return out;
}

Output run_thm43(const Env& env, const json& cmd) {
    TorsionFreeKkReport r = torsion_free_kk(resolve_graded(env, need_string(cmd, "a")),
                                            resolve_graded(env, need_string(cmd, "b")),
                                            need_degree(cmd));
    Output out;
    out.data["degree"] = r.degree;
    out.data["kk"] = uct_json(r.uct);
    out.data["hom_into_qmodz"] = group_json(r.hom_into_qmodz);
    out.data["dual_sum"] = group_json(r.dual_sum);
    out.data["hom_vanishes"] = r.hom_vanishes;
    out.data["ext_matches_hom_qmodz"] = r.ext_matches_hom_qmodz;
    out.data["matches_dual_sum"] = r.matches_dual_sum;
    out.data["finite"] = r.finite;
    out.text.kv("KK_" + std::to_string(r.degree), show(r.uct.total));
    out.text.kv("Hom(K(A), K(B) (x) Q/Z)", show(r.hom_into_qmodz));
    out.text.kv("dual sum", show(r.dual_sum));
    out.text.kv("Hom part vanishes", r.hom_vanishes);
    out.text.kv("Ext = Hom(-, - (x) Q/Z)", r.ext_matches_hom_qmodz);
    out.text.kv("KK = sum of duals", r.matches_dual_sum);
    out.text.kv("finite", r.finite);
    return out;
}

Output run_thm44(const Env& env, const json& cmd) {
    ChiSequenceReport r = chi_sequence(resolve_graded(env, need_string(cmd, "a")),
                                       need_degree(cmd));
    Output out;
    out.data["degree"] = r.degree;
    out.data["hom_to_reals"] = group_json(r.hom_to_reals.finite_part);
    out.data["dual"] = group_json(r.dual);
    out.data["k_dual"] = group_json(r.k_dual_group);
    out.data["chi"] = map_json(r.chi);
    out.data["chi_iso"] = r.chi_iso;
    out.text.kv("Hom(K, R)", show(r.hom_to_reals.finite_part));
    out.text.kv("X(K_" + std::to_string(r.degree) + ")", show(r.dual));
    out.text.kv("K^" + std::to_string(1 - r.degree), show(r.k_dual_group));
    out.text.kv("chi iso", r.chi_iso);
    return out;
}

Output subgroup_predicate(const Env& env, const json& cmd, bool purity) {
    std::optional<GroupMap> embedding;
    if (cmd.contains("embedding")) {
        embedding = resolve_map(env, need_string(cmd, "embedding"));
    } else {
        FgaGroup g = resolve_group(env, need_string(cmd, "ambient"));
        std::vector<Elem> gens;
        if (cmd.contains("generators"))
            for (const json& e : cmd["generators"]) gens.push_back(json_to_elem(e));
        embedding = subgroup_from_generators(g, gens).embedding;
    }
    Output out;
    out.data["subgroup"] = group_json(embedding->domain());
    out.data["ambient"] = group_json(embedding->codomain());
    out.data["embedding"] = matrix_json(embedding->matrix());
    out.text.kv("subgroup", show(embedding->domain()));
    out.text.kv("ambient", show(embedding->codomain()));
    if (purity) {
        bool pure = is_pure(*embedding);
        out.data["pure"] = pure;
        out.text.kv("pure", pure);
    } else {
        SummandReport rep = is_summand(*embedding);
        out.data["summand"] = rep.summand;
        if (rep.retraction) out.data["retraction"] = matrix_json(rep.retraction->matrix());
        out.text.kv("summand", rep.summand);
    }
    return out;
}

Output run_snake(const Env& env, const json& cmd) {
    LadderDiagram ladder(resolve_map(env, need_string(cmd, "top_f")),
                         resolve_map(env, need_string(cmd, "top_g")),
                         resolve_map(env, need_string(cmd, "bottom_f")),
                         resolve_map(env, need_string(cmd, "bottom_g")),
                         resolve_map(env, need_string(cmd, "va")),
                         resolve_map(env, need_string(cmd, "vb")),
                         resolve_map(env, need_string(cmd, "vc")));
    SnakeResult r = snake(ladder);
    Output out;
    json nodes = json::array();
    for (const FgaGroup& g : r.sequence.groups) nodes.push_back(group_json(g));
    out.data["nodes"] = std::move(nodes);
    json maps = json::array();
    for (const GroupMap& m : r.sequence.maps) maps.push_back(matrix_json(m.matrix()));
    out.data["maps"] = std::move(maps);
    out.data["connecting"] = map_json(r.connecting);
    out.data["exact"] = all_exact(check_exact(r.sequence));
    const char* names[6] = {"ker a", "ker b", "ker c", "coker a", "coker b", "coker c"};
    for (int i = 0; i < 6; ++i) out.text.kv(names[i], show(r.sequence.groups[i]));
    out.text.kv("connecting map", r.connecting.matrix().to_string());
    out.text.kv("exact", all_exact(check_exact(r.sequence)));
    return out;
}

Output run_checkexact(const Env& env, const json& cmd) {
    if (!cmd.contains("maps") || !cmd["maps"].is_array() || cmd["maps"].empty())
        throw ValidationError("checkexact needs a nonempty 'maps' array");
    std::vector<GroupMap> maps;
    for (const json& ref : cmd["maps"]) maps.push_back(resolve_map(env, ref.get<std::string>()));
    std::vector<FgaGroup> groups{maps.front().domain()};
    for (const GroupMap& m : maps) groups.push_back(m.codomain());
    LongSequence seq(std::move(groups), std::move(maps));
    auto reports = check_exact(seq);
    Output out;
    json nodes = json::array();
    for (const NodeReport& r : reports) {
        json n;
        n["node"] = r.node;
        n["exact"] = r.exact();
        n["image_in_kernel"] = r.image_in_kernel;
        n["kernel_in_image"] = r.kernel_in_image;
        n["witness"] = r.witness ? elem_json(*r.witness) : json(nullptr);
        nodes.push_back(std::move(n));
        out.text.kv("node " + std::to_string(r.node) + " (" + show(seq.groups[r.node]) + ")",
                    r.exact());
    }
    out.data["nodes"] = std::move(nodes);
    out.data["exact"] = all_exact(reports);
    out.text.kv("exact", all_exact(reports));
    return out;
}

const std::map<std::string, std::set<std::string>> kCommandFields = {
    {"kk", {"cmd", "a", "b", "deg"}},
    {"kdual", {"cmd", "a", "deg"}},
    {"decompose", {"cmd", "k"}},
    {"primary", {"cmd", "k"}},
    {"realize", {"cmd", "k", "gens_even", "gens_odd"}},
    {"kunneth", {"cmd", "a", "b", "deg"}},
    {"coeff", {"cmd", "a", "g", "deg"}},
    {"dual", {"cmd", "g"}},
    {"fourway", {"cmd", "a", "b", "deg"}},
    {"split21", {"cmd", "a", "b"}},
    {"split26", {"cmd", "a", "b"}},
    {"thm43", {"cmd", "a", "b", "deg"}},
    {"thm44", {"cmd", "a", "deg"}},
    {"ispure", {"cmd", "embedding", "ambient", "generators"}},
    {"issummand", {"cmd", "embedding", "ambient", "generators"}},
    {"snake", {"cmd", "top_f", "top_g", "bottom_f", "bottom_g", "va", "vb", "vc"}},
    {"checkexact", {"cmd", "maps"}},
};

Output dispatch(const Env& env, const json& cmd) {
    std::string name = need_string(cmd, "cmd");
    auto fields = kCommandFields.find(name);
    if (fields == kCommandFields.end()) throw ValidationError("unknown command '" + name + "'");
    require_keys(cmd, fields->second, "command '" + name + "'");

    Output out;
    if (name == "kk") out = run_kk(env, cmd);
    else if (name == "kdual") out = run_kdual(env, cmd);
    else if (name == "decompose") out = run_decompose(env, cmd);
    else if (name == "primary") out = run_primary(env, cmd);
    else if (name == "realize") out = run_realize(env, cmd);
    else if (name == "kunneth") out = run_kunneth(env, cmd, false);
    else if (name == "coeff") out = run_kunneth(env, cmd, true);
    else if (name == "dual") out = run_dual(env, cmd);
    else if (name == "fourway") out = run_fourway(env, cmd);
    else if (name == "split21") out = run_split(env, cmd, true);
    else if (name == "split26") out = run_split(env, cmd, false);
    else if (name == "thm43") out = run_thm43(env, cmd);
    else if (name == "thm44") out = run_thm44(env, cmd);
    else if (name == "ispure") out = subgroup_predicate(env, cmd, true);
    else if (name == "issummand") out = subgroup_predicate(env, cmd, false);
    else if (name == "snake") out = run_snake(env, cmd);
    else if (name == "checkexact") out = run_checkexact(env, cmd);

    json full;
    full["command"] = name;
    for (auto& item : out.data.items()) full[item.key()] = item.value();
    out.data = std::move(full);
    return out;
}

// ---------------------------------------------------------------------------
// job files
// ---------------------------------------------------------------------------

Env load_env(const json& job) {
    Env env;
    if (job.contains("groups")) {
        if (!job["groups"].is_object()) throw ValidationError("'groups' must be an object");
        for (const auto& item : job["groups"].items()) {
            auto parsed = parse_any(item.value().get<std::string>());
            if (std::holds_alternative<GradedGroup>(parsed))
                env.graded.emplace(item.key(), std::get<GradedGroup>(parsed));
            else
                env.groups.emplace(item.key(), std::get<FgaGroup>(parsed));
        }
    }
    if (job.contains("maps")) {
        if (!job["maps"].is_object()) throw ValidationError("'maps' must be an object");
        for (const auto& item : job["maps"].items()) {
            const json& m = item.value();
            require_keys(m, {"domain", "codomain", "matrix"}, "map '" + item.key() + "'");
            FgaGroup dom = resolve_group(env, need_string(m, "domain"));
            FgaGroup cod = resolve_group(env, need_string(m, "codomain"));
            if (!m.contains("matrix")) throw ValidationError("map needs a 'matrix'");
            env.maps.emplace(item.key(),
                             GroupMap(dom, cod,
                                      json_to_matrix(m["matrix"], cod.gen_count(),
                                                     dom.gen_count())));
        }
    }
    return env;
}

int run_job(const std::string& path, const std::string& format, std::ostream& os) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open job file '" + path + "'");
    json job;
    try {
        job = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("job file is not valid JSON: ") + e.what());
    }
    require_keys(job, {"schema_version", "groups", "maps", "commands"}, "job file");
    if (!job.contains("schema_version") || job["schema_version"] != 1)
        throw ValidationError("job file must declare \"schema_version\": 1");
    Env env = load_env(job);
    if (!job.contains("commands") || !job["commands"].is_array())
        throw ValidationError("job file needs a 'commands' array");

    // validate the whole command list before running anything
    for (const json& cmd : job["commands"]) {
        std::string name = need_string(cmd, "cmd");
        auto fields = kCommandFields.find(name);
        if (fields == kCommandFields.end())
            throw ValidationError("unknown command '" + name + "'");
        require_keys(cmd, fields->second, "command '" + name + "'");
    }

    json results = json::array();
    std::vector<TextReport> texts;
    for (const json& cmd : job["commands"]) {
        Output out = dispatch(env, cmd);
        results.push_back(std::move(out.data));
        texts.push_back(std::move(out.text));
    }
    if (format == "json") {
        json doc;
        doc["schema_version"] = 1;
        doc["results"] = std::move(results);
        os << doc.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < texts.size(); ++i) {
            os << "## command " << i << ": "
               << job["commands"][i]["cmd"].get<std::string>() << "\n";
            print_text(texts[i], os);
        }
    }
    return 0;
}

void emit_single(const Output& out, const std::string& format, std::ostream& os) {
    if (format == "json")
        os << out.data.dump(2) << "\n";
    else
        print_text(out.text, os);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K-theory decompositions and Kasparov-group assembly"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    std::string job_path;
    app.add_option("--job", job_path, "run a job file (JSON, schema_version 1)");
    app.add_flag("--primary-form", g_primary_form,
                 "print torsion in prime-power form instead of invariant factors");

    // everything a subcommand needs, declared up front; each subcommand fills
    // the same json command object the job-file path uses
    std::string a, b, g, k, amb;
    int deg = 0;
    std::vector<std::string> gens0, gens1, gens;

    auto add_graded = [&](CLI::App* sc, const char* name, std::string& dst, bool req = true) {
        auto* opt = sc->add_option(name, dst, "graded group, e.g. \"[Z + Z/4 ; Z/9]\"");
        if (req) opt->required();
    };

    auto* c_kk = app.add_subcommand("kk", "KK_j(A,B) by the universal-coefficient presentation");
    add_graded(c_kk, "--a", a);
    add_graded(c_kk, "--b", b);
    c_kk->add_option("--deg", deg, "degree (0 or 1)")->required();

    auto* c_kdual = app.add_subcommand("kdual", "K^j(A) = KK_j(A, C)");
    add_graded(c_kdual, "--a", a);
    c_kdual->add_option("--deg", deg)->required();

    auto* c_dec = app.add_subcommand("decompose", "torsion / torsion-free realization record");
    c_dec->add_option("k", k, "graded group")->required();

    auto* c_pri = app.add_subcommand("primary", "p-primary decomposition of a torsion group");
    c_pri->add_option("k", k, "graded torsion group")->required();

    auto* c_rea = app.add_subcommand("realize", "realization record of a graded subgroup");
    add_graded(c_rea, "--k", k);
    c_rea->add_option("--gen0", gens0, "degree-0 generator, comma-separated coordinates");
    c_rea->add_option("--gen1", gens1, "degree-1 generator, comma-separated coordinates");

    auto* c_kun = app.add_subcommand("kunneth", "graded Kunneth product groups");
    add_graded(c_kun, "--a", a);
    add_graded(c_kun, "--b", b);
    c_kun->add_option("--deg", deg)->required();

    auto* c_coe = app.add_subcommand("coeff", "K-theory with coefficients K_j(A; G)");
    add_graded(c_coe, "--a", a);
    c_coe->add_option("--g", g, "coefficient group (ungraded)")->required();
    c_coe->add_option("--deg", deg)->required();

    auto* c_dual = app.add_subcommand("dual", "Pontryagin dual of a torsion group");
    c_dual->add_option("g", g, "ungraded torsion group")->required();

    auto* c_fw = app.add_subcommand("fourway", "reduce KK to the four torsion/free cases");
    add_graded(c_fw, "--a", a);
    add_graded(c_fw, "--b", b);
    c_fw->add_option("--deg", deg)->required();

    auto* c_s21 = app.add_subcommand("split21", "torsion-restriction splitting criterion");
    add_graded(c_s21, "--a", a);
    add_graded(c_s21, "--b", b);

    auto* c_s26 = app.add_subcommand("split26", "free-projection splitting criterion");
    add_graded(c_s26, "--a", a);
    add_graded(c_s26, "--b", b);

    auto* c_43 = app.add_subcommand("thm43", "torsion-source / free-target KK identities");
    add_graded(c_43, "--a", a);
    add_graded(c_43, "--b", b);
    c_43->add_option("--deg", deg)->required();

    auto* c_44 = app.add_subcommand("thm44", "Pontryagin dual vs K-homology sequence");
    add_graded(c_44, "--a", a);
    c_44->add_option("--deg", deg)->required();

    auto* c_ip = app.add_subcommand("ispure", "purity of a generated subgroup");
    c_ip->add_option("--ambient", amb, "ambient group (ungraded)")->required();
    c_ip->add_option("--gen", gens, "subgroup generator, comma-separated coordinates");

    auto* c_is = app.add_subcommand("issummand", "direct-summand test with retraction witness");
    c_is->add_option("--ambient", amb, "ambient group (ungraded)")->required();
    c_is->add_option("--gen", gens, "subgroup generator, comma-separated coordinates");

    auto* c_sn = app.add_subcommand("snake", "kernel-cokernel sequence of a ladder (job files only)");
    auto* c_ce = app.add_subcommand("checkexact", "exactness report for a chain (job files only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // parse/usage problems are exit code 1
    }

    auto parse_elem_list = [](const std::vector<std::string>& raw) {
        json out = json::array();
        for (const std::string& s : raw) {
            json e = json::array();
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ','))
                e.push_back(json::parse(tok, nullptr, true));  // integers only
            out.push_back(std::move(e));
        }
        return out;
    };

    try {
        if (!job_path.empty()) return run_job(job_path, format, std::cout);

        json cmd;
        if (c_kk->parsed()) cmd = {{"cmd", "kk"}, {"a", a}, {"b", b}, {"deg", deg}};
        else if (c_kdual->parsed()) cmd = {{"cmd", "kdual"}, {"a", a}, {"deg", deg}};
        else if (c_dec->parsed()) cmd = {{"cmd", "decompose"}, {"k", k}};
        else if (c_pri->parsed()) cmd = {{"cmd", "primary"}, {"k", k}};
        else if (c_rea->parsed()) {
            cmd = {{"cmd", "realize"}, {"k", k}};
            cmd["gens_even"] = parse_elem_list(gens0);
            cmd["gens_odd"] = parse_elem_list(gens1);
        } else if (c_kun->parsed()) cmd = {{"cmd", "kunneth"}, {"a", a}, {"b", b}, {"deg", deg}};
        else if (c_coe->parsed()) cmd = {{"cmd", "coeff"}, {"a", a}, {"g", g}, {"deg", deg}};
        else if (c_dual->parsed()) cmd = {{"cmd", "dual"}, {"g", g}};
        else if (c_fw->parsed()) cmd = {{"cmd", "fourway"}, {"a", a}, {"b", b}, {"deg", deg}};
        else if (c_s21->parsed()) cmd = {{"cmd", "split21"}, {"a", a}, {"b", b}};
        else if (c_s26->parsed()) cmd = {{"cmd", "split26"}, {"a", a}, {"b", b}};
        else if (c_43->parsed()) cmd = {{"cmd", "thm43"}, {"a", a}, {"b", b}, {"deg", deg}};
        else if (c_44->parsed()) cmd = {{"cmd", "thm44"}, {"a", a}, {"deg", deg}};
        else if (c_ip->parsed()) {
            cmd = {{"cmd", "ispure"}, {"ambient", amb}};
            cmd["generators"] = parse_elem_list(gens);
        } else if (c_is->parsed()) {
            cmd = {{"cmd", "issummand"}, {"ambient", amb}};
            cmd["generators"] = parse_elem_list(gens);
        } else if (c_sn->parsed() || c_ce->parsed()) {
            throw ValidationError(
                "this command takes named maps, which are only accepted in job files "
                "(matrices on the command line are not supported); use --job <file>");
        } else {
            std::cerr << app.help() << "\n";
            return 1;
        }
        emit_single(dispatch(Env{}, cmd), format, std::cout);
        return 0;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
