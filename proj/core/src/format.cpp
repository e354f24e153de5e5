#include "fracpow/format.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fracpow {

  namespace {

    using json = nlohmann::ordered_json;

    // Objects one key per line; arrays of scalars or short arrays on one line.
    bool flat(json const& j) {
      if (j.is_object()) {
        return j.empty();
      }
      if (!j.is_array()) {
        return true;
      }
      for (json const& e : j) {
        if (e.is_object() && !e.empty()) {
          return false;
        }
        if (e.is_array() && !flat(e)) {
          return false;
        }
      }
      return true;
    }

    void render(json const& j, int indent, std::string& out) {
      if (flat(j)) {
        out += j.dump();
        return;
      }
      std::string pad(static_cast<std::size_t>(indent + 2), ' ');
      std::string close(static_cast<std::size_t>(indent), ' ');
      if (j.is_object()) {
        out += "{\n";
        std::size_t n = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++n) {
          out += pad + json(it.key()).dump() + ": ";
          render(it.value(), indent + 2, out);
          out += n + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "}";
        return;
      }
      out += "[\n";
      for (std::size_t n = 0; n < j.size(); ++n) {
        out += pad;
        render(j[n], indent + 2, out);
        out += n + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
    }

    std::string to_text(json const& j) {
      std::string out;
      render(j, 0, out);
      return out + "\n";
    }

    json parse_json(std::string_view text) {
      try {
        return json::parse(text.begin(), text.end());
      } catch (json::exception const& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
      }
    }

    json letter_json(Letter l) {
      if (l.is_primed()) {
        return std::to_string(l.value()) + "'";
      }
      return l.value();
    }

    Letter letter_from(json const& j) {
      if (j.is_number_unsigned() || j.is_number_integer()) {
        std::int64_t v = j.get<std::int64_t>();
        if (v < 0 || v > Letter::kMaxValue) {
          throw FormatError("letter out of range: " + j.dump());
        }
        return Letter(static_cast<std::uint32_t>(v));
      }
      if (j.is_string()) {
        Word w = parse_word(j.get<std::string>());
        if (w.size() != 1) {
          throw FormatError("not a single letter: " + j.dump());
        }
        return w[0];
      }
      throw FormatError("not a letter: " + j.dump());
    }

    json word_runs(Word const& w) {
      json out = json::array();
      for (std::size_t i = 0; i < w.size();) {
        std::size_t e = i;
        while (e < w.size() && w[e] == w[i]) {
          ++e;
        }
        out.push_back(json::array({letter_json(w[i]), e - i}));
        i = e;
      }
      return out;
    }

    // Run-length pairs, a flat list of letters, or a word string.
    Word word_from(json const& j) {
      if (j.is_string()) {
        return parse_word(j.get<std::string>());
      }
      if (!j.is_array()) {
        throw FormatError("expected a word, got " + j.dump());
      }
      Word out;
      for (json const& e : j) {
        if (e.is_array()) {
          if (e.size() != 2 || !e[1].is_number_integer() || e[1].get<std::int64_t>() < 0) {
            throw FormatError("bad run " + e.dump());
          }
          out.insert(out.end(), e[1].get<std::size_t>(), letter_from(e[0]));
        } else {
          out.push_back(letter_from(e));
        }
      }
      return out;
    }

    json form_json(LinearForm const& f) {
      return json::array({f.alpha, f.beta, f.gamma});
    }

    LinearForm form_from(json const& j) {
      if (j.is_string()) {
        return LinearForm::parse(j.get<std::string>());
      }
      if (!j.is_array() || j.size() != 3) {
        throw FormatError("expected [alpha, beta, gamma], got " + j.dump());
      }
      return LinearForm::of(j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>());
    }

    template <typename T>
    T field(json const& j, char const* key) {
      if (!j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
      }
      try {
        return j.at(key).get<T>();
      } catch (json::exception const& e) {
        throw FormatError(std::string("bad field \"") + key + "\": " + e.what());
      }
    }

    json windows_json(std::vector<WindowResult> const& ws) {
      json out = json::array();
      for (WindowResult const& w : ws) {
        if (w.violation) {
          out.push_back({{"m", w.m}, {"start", w.violation->start}, {"witness", w.violation->witness}});
        }
      }
      return out;
    }

    json morphism_json(ExplicitMorphism const& m) {
      json j;
      j["kind"] = "uniform-shift";
      j["k"]    = m.k;
      j["d"]    = m.d;
      j["u"]    = word_runs(m.u);
      json ex   = json::array();
      for (auto [n, l] : m.shift_exceptions) {
        ex.push_back(json::array({n, l}));
      }
      j["shift_exceptions"] = ex;
      if (!m.transient.empty()) {
        j["transient"] = word_runs(m.transient);
      }
      if (!m.primed_overrides.empty()) {
        json po = json::array();
        for (auto const& [bits, img] : m.primed_overrides) {
          Letter l;
          l = Letter::primed(bits & Letter::kMaxValue);
          po.push_back(json::array({letter_json(l), word_runs(img)}));
        }
        j["primed_overrides"] = po;
      }
      return j;
    }

  }  // namespace

  static MorphismFile parse_morphism_json(std::string_view text) {
    json         j = parse_json(text);
    MorphismFile f;
    if (j.contains("kind") && j["kind"] != "uniform-shift") {
      throw FormatError("unsupported morphism kind " + j["kind"].dump());
    }
    if (j.contains("name")) {
      f.name = field<std::string>(j, "name");
    }
    if (j.contains("fraction")) {
      f.fraction = Fraction::parse(field<std::string>(j, "fraction"));
    }
    ExplicitMorphism& m = f.morphism;
    m.u                 = word_from(j.at("u"));
    m.d                 = field<std::uint32_t>(j, "d");
    m.k                 = j.contains("k") ? field<std::uint32_t>(j, "k") : static_cast<std::uint32_t>(m.u.size() + 1);
    if (m.k != m.u.size() + 1) {
      throw FormatError("k = " + std::to_string(m.k) + " but u has length " + std::to_string(m.u.size()));
    }
    if (j.contains("shift_exceptions")) {
      for (json const& e : j["shift_exceptions"]) {
        m.shift_exceptions[e.at(0).get<std::uint32_t>()] = e.at(1).get<std::uint32_t>();
      }
    }
    if (j.contains("transient")) {
      m.transient = word_from(j["transient"]);
      if (m.transient.empty() || m.transient[0] != Letter::primed(0)) {
        throw FormatError("the transient must begin with 0'");
      }
    }
    if (j.contains("primed_overrides")) {
      for (json const& e : j["primed_overrides"]) {
        Letter l = letter_from(e.at(0));
        if (!l.is_primed()) {
          throw FormatError("override for an unprimed letter");
        }
        m.primed_overrides[l.bits()] = word_from(e.at(1));
      }
    }
    if (j.contains("anchor")) {
      f.anchor = AnchorHint{field<std::size_t>(j["anchor"], "position"), field<std::size_t>(j["anchor"], "length")};
    }
    if (j.contains("locating_length")) {
      f.locating_length = field<std::size_t>(j, "locating_length");
    }
    if (j.contains("transient_unique_length")) {
      f.transient_unique_length = field<std::size_t>(j, "transient_unique_length");
    }
    return f;
  }

  std::string format_morphism(MorphismFile const& f) {
    json j;
    if (!f.name.empty()) {
      j["name"] = f.name;
    }
    if (f.fraction) {
      j["fraction"] = f.fraction->str();
    }
    json body = morphism_json(f.morphism);
    for (auto const& [key, value] : body.items()) {
      j[key] = value;
    }
    if (f.anchor) {
      j["anchor"] = {{"position", f.anchor->position}, {"length", f.anchor->length}};
    }
    if (f.locating_length) {
      j["locating_length"] = *f.locating_length;
    }
    if (f.transient_unique_length) {
      j["transient_unique_length"] = *f.transient_unique_length;
    }
    return to_text(j);
  }

  static SymbolicMorphism parse_symbolic_json(std::string_view text) {
    json             j = parse_json(text);
    SymbolicMorphism m;
    if (j.contains("name")) {
      m.name = field<std::string>(j, "name");
    }
    for (json const& b : j.at("blocks")) {
      if (!b.is_array() || b.size() != 2) {
        throw FormatError("bad block " + b.dump());
      }
      Letter l = letter_from(b[1]);
      if (l.is_primed()) {
        throw FormatError("primed letters are not allowed in symbolic blocks");
      }
      m.blocks.push_back({SymLetter::lit(l.value()), form_from(b[0])});
    }
    m.d = field<std::uint32_t>(j, "d");
    m.k = j.contains("k") ? form_from(j["k"]) : m.image_length();
    try {
      m.interval = RationalInterval::parse(field<std::string>(j, "interval"));
    } catch (std::invalid_argument const& e) {
      throw FormatError(e.what());
    }
    if (j.contains("gcd")) {
      m.gcd_condition = field<std::vector<std::int64_t>>(j, "gcd");
    }
    if (j.contains("exceptions")) {
      for (json const& e : j["exceptions"]) {
        m.exceptions.push_back(Rational::parse(e.get<std::string>()));
      }
    }
    if (j.contains("locating")) {
      m.stated_locating = form_from(j["locating"]);
    }
    try {
      check_shape(m);
    } catch (std::invalid_argument const& e) {
      throw FormatError(e.what());
    }
    return m;
  }

  std::string format_symbolic(SymbolicMorphism const& m) {
    json j;
    if (!m.name.empty()) {
      j["name"] = m.name;
    }
    j["kind"]   = "symbolic";
    json blocks = json::array();
    for (SymBlock const& b : m.blocks) {
      blocks.push_back(json::array({form_json(b.exp), b.letter.value}));
    }
    j["blocks"]   = blocks;
    j["d"]        = m.d;
    j["k"]        = form_json(m.k);
    j["interval"] = m.interval.str();
    j["gcd"]      = m.gcd_condition;
    json ex       = json::array();
    for (Rational const& r : m.exceptions) {
      ex.push_back(r.str());
    }
    j["exceptions"] = ex;
    if (m.stated_locating) {
      j["locating"] = form_json(*m.stated_locating);
    }
    return to_text(j);
  }

  std::string format_report(ProofReport const& r) {
    json j;
    j["fraction"]          = r.fraction.str();
    j["status"]            = status_name(r.status);
    j["k"]                 = r.k;
    j["d"]                 = r.d;
    j["method"]            = r.method;
    j["locating_length"]   = r.locating_length;
    j["minimality_witness"] = json::array({r.minimality_first, r.minimality_second});
    j["m_max"]             = r.m_max;
    j["short_words_check"] = r.short_words_check;
    j["windows_checked"]   = r.window_results.size();
    j["violations"]        = windows_json(r.window_results);
    if (r.transient_unique_length) {
      j["transient_unique_length"] = *r.transient_unique_length;
      if (r.anchor) {
        j["anchor"] = {{"position", r.anchor->position}, {"length", r.anchor->length}};
      }
      j["transient_m_max"]      = r.transient_m_max;
      j["transient_m_checked"]  = r.transient_m_checked;
      j["transient_violations"] = windows_json(r.transient_window_results);
    }
    if (r.leastness_checked) {
      j["leastness_cap"] = r.leastness_cap;
      json w             = json::object();
      for (auto const& [key, value] : r.leastness_witnesses) {
        w[key] = value;
      }
      j["leastness_witnesses"] = w;
      j["unresolved"]          = r.unresolved;
    }
    j["notes"] = r.notes;
    return to_text(j);
  }

  std::string format_proof(SymbolicProof const& p) {
    json j;
    j["name"]              = p.name;
    j["interval"]          = p.interval.str();
    j["status"]            = status_name(p.status);
    j["locating_length"]   = p.ell.str();
    j["cc"]                = p.cc;
    j["dd"]                = p.dd;
    j["m_max"]             = p.m_max;
    j["i_min"]             = p.i_min.str();
    j["a_min"]             = p.a_min;
    j["short_words_bound"] = p.short_words_bound.str();
    j["short_words_ok"]    = p.short_words_ok;
    j["subintervals"]      = p.subinterval_count();
    json ex                = json::array();
    for (Rational const& r : p.exceptions) {
      ex.push_back(r.str());
    }
    j["exceptions"] = ex;
    json leaves     = json::array();
    for (LeafRecord const& l : p.leaves) {
      json e;
      e["domain"] = l.domain.str();
      e["proved"] = l.proved;
      if (!l.failure.empty()) {
        e["failure"] = l.failure;
      }
      leaves.push_back(e);
    }
    j["leaves"] = leaves;
    json points = json::array();
    for (PointRecord const& pt : p.points) {
      json e;
      e["ratio"]      = pt.ratio.str();
      e["origin"]     = pt.origin;
      e["admissible"] = pt.admissible;
      if (pt.admissible) {
        e["status"] = status_name(pt.status);
      }
      e["detail"] = pt.detail;
      points.push_back(e);
    }
    j["points"] = points;
    j["notes"]  = p.notes;
    return to_text(j);
  }

  std::string format_conjecture(StructureConjecture const& c) {
    json j;
    j["fraction"] = c.fraction.str();
    json cands    = json::array();
    for (KCandidate const& k : c.candidates) {
      cands.push_back({{"k", k.k}, {"method", k.method}, {"evidence", k.evidence}});
    }
    j["candidates"]          = cands;
    j["k"]                   = c.k;
    j["transient_rows"]      = c.transient_rows;
    j["transient_length"]    = c.transient_length;
    j["self_similar_column"] = c.self_similar_column;
    j["shift"]               = shift_kind_name(c.shift);
    j["d"]                   = c.d;
    json lm                  = json::array();
    for (auto [n, l] : c.letter_map) {
      lm.push_back(json::array({n, l}));
    }
    j["letter_map"] = lm;
    if (!c.increments.empty()) {
      j["increments"] = c.increments;
    }
    std::size_t constant = 0, periodic = 0, self = 0;
    json        periodic_cols = json::array();
    for (std::size_t n = 0; n < c.profile.columns.size(); ++n) {
      switch (c.profile.columns[n].kind) {
        case ColumnKind::constant: ++constant; break;
        case ColumnKind::periodic:
          ++periodic;
          periodic_cols.push_back(json::array({n, c.profile.columns[n].period}));
          break;
        case ColumnKind::self_similar: ++self; break;
      }
    }
    j["columns"]    = {{"constant", constant}, {"periodic", periodic}, {"self_similar", self}, {"periodic_columns", periodic_cols}};
    j["confidence"] = c.confidence;
    j["catalog_match"] = c.catalog_match ? json(*c.catalog_match) : json(nullptr);
    if (c.morphism) {
      j["morphism"] = morphism_json(*c.morphism);
    }
    return to_text(j);
  }

  std::string read_text(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw FormatError("cannot open " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  std::filesystem::path catalog_dir() {
    if (char const* env = std::getenv("FRACPOW_CATALOG")) {
      return env;
    }
    for (char const* dir : {FRACPOW_SOURCE_CATALOG, FRACPOW_INSTALL_CATALOG}) {
      if (std::filesystem::is_directory(dir)) {
        return dir;
      }
    }
    throw FormatError("catalog directory not found; set FRACPOW_CATALOG");
  }

  MorphismFile parse_morphism(std::string_view text) {
    try {
      return parse_morphism_json(text);
    } catch (json::exception const& e) {
      throw FormatError(std::string("morphism file: ") + e.what());
    }
  }

  SymbolicMorphism parse_symbolic(std::string_view text) {
    try {
      return parse_symbolic_json(text);
    } catch (json::exception const& e) {
      throw FormatError(std::string("symbolic file: ") + e.what());
    }
  }

  std::optional<std::string> find_in_catalog(ExplicitMorphism const& m, Fraction f, std::filesystem::path const& dir) {
    std::vector<std::filesystem::path> files;
    for (auto const& e : std::filesystem::directory_iterator(dir)) {
      if (e.path().extension() == ".json") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    // Explicit files for f first, then families.
    std::optional<std::string> family;
    for (auto const& path : files) {
      json j = json::parse(read_text(path));
      if (j.value("kind", "") == "symbolic") {
        if (!family) {
          SymbolicMorphism s = parse_symbolic(j.dump());
          if (s.admits(f.a, f.b) && instantiate(s, f) == m) {
            family = s.name;
          }
        }
      } else {
        MorphismFile mf = parse_morphism(j.dump());
        if (mf.fraction == f && mf.morphism == m) {
          return mf.name.empty() ? path.stem().string() : mf.name;
        }
      }
    }
    if (family) {
      return family;
    }
    return std::nullopt;
  }

}  // namespace fracpow
