#include "rtmix/io.hpp"

#include <fstream>
#include <sstream>

namespace rtmix::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::InvalidInstance, where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

Int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    fail(ErrorKind::OverflowLimit, where + ": integer exceeds 64 bits");
  return j.get<Int>();
}

Int int_member(const Json& j, const char* key, const std::string& where) {
  return as_int(member(j, key, where), where + "." + key);
}

const Json& array_member(const Json& j, const char* key, const std::string& where) {
  const Json& a = member(j, key, where);
  if (!a.is_array()) bad(where + "." + key, "expected an array");
  return a;
}

IntMatrix read_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols, const std::string& where) {
  auto shape = [&](bool ok) {
    require(ok, ErrorKind::MalformedBlocks,
            where + ": expected a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  };
  shape(j.is_array() && static_cast<Eigen::Index>(j.size()) == rows);
  IntMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    shape(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = as_int(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

IntVector read_vector(const Json& j, Eigen::Index len, const std::string& where) {
  require(j.is_array() && static_cast<Eigen::Index>(j.size()) == len, ErrorKind::MalformedBlocks,
          where + ": expected " + std::to_string(len) + " entries");
  IntVector v(len);
  for (Eigen::Index i = 0; i < len; ++i) v(i) = as_int(j[static_cast<std::size_t>(i)], where);
  return v;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

Json parse(const std::string& text, const std::string& origin) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(origin, std::string("malformed JSON (") + e.what() + ")");
  }
  if (j.is_object() && j.contains("instance")) return j["instance"];
  return j;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

TaskSystem task_system_from_json(const Json& j) {
  TaskSystem ts;
  const Json& tasks = array_member(j, "tasks", "system");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string where = "tasks[" + std::to_string(i) + "]";
    const Json& t = tasks[i];
    Task task;
    task.c = int_member(t, "c", where);
    task.p = int_member(t, "p", where);
    task.jitter = t.contains("jitter") ? int_member(t, "jitter", where) : 0;
    if (t.contains("d") && !t["d"].is_null()) task.d = int_member(t, "d", where);
    ts.tasks.push_back(task);
  }
  validate(ts);
  return ts;
}

Json to_json(const TaskSystem& ts) {
  Json tasks = Json::array();
  for (const auto& t : ts.tasks) {
    Json d = t.d ? Json(*t.d) : Json(nullptr);
    tasks.push_back({{"c", t.c}, {"d", d}, {"p", t.p}, {"jitter", t.jitter}});
  }
  return {{"tasks", tasks}};
}

MixInstance mix_from_json(const Json& j) {
  MixInstance inst;
  inst.w0 = int_member(j, "w0", "mix");
  const Json& terms = array_member(j, "terms", "mix");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    inst.terms.push_back({int_member(terms[i], "w", where), int_member(terms[i], "a", where),
                          int_member(terms[i], "b", where)});
  }
  validate(inst);
  return inst;
}

Json to_json(const MixInstance& inst) {
  Json terms = Json::array();
  for (const auto& t : inst.terms) terms.push_back({{"w", t.w}, {"a", t.a}, {"b", t.b}});
  return {{"w0", inst.w0}, {"terms", terms}};
}

Json to_json(const MixSolution& sol) { return {{"objective", sol.objective}, {"s", sol.s}, {"x", sol.x}}; }

ReleasePattern releases_from_json(const Json& j) {
  ReleasePattern rp;
  const Json& jobs = array_member(j, "jobs", "releases");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string where = "jobs[" + std::to_string(i) + "]";
    if (!jobs[i].is_array()) bad(where, "expected an array of jobs");
    std::vector<JobRelease> list;
    for (std::size_t k = 0; k < jobs[i].size(); ++k) {
      const std::string at = where + "[" + std::to_string(k) + "]";
      list.push_back({int_member(jobs[i][k], "arrival", at), int_member(jobs[i][k], "release", at)});
    }
    rp.jobs.push_back(std::move(list));
  }
  return rp;
}

Json to_json(const ReleasePattern& rp) {
  Json jobs = Json::array();
  for (const auto& list : rp.jobs) {
    Json row = Json::array();
    for (const auto& job : list) row.push_back({{"arrival", job.arrival}, {"release", job.release}});
    jobs.push_back(std::move(row));
  }
  return {{"jobs", jobs}};
}

SimpleFourBlock four_block_from_json(const Json& j) {
  SimpleFourBlock p;
  const std::string where = "4-block";
  auto dim = [&](const char* key) {
    const Int v = int_member(j, key, where);
    require(v >= 0 && v <= 1'000'000, ErrorKind::MalformedBlocks, where + "." + key + " out of range");
    return static_cast<int>(v);
  };
  p.r = dim("r");
  p.s = dim("s");
  p.t = dim("t");
  p.q = dim("q");
  p.n = dim("n");
  require(p.q == 1, ErrorKind::MalformedBlocks, "exactly one coupling row is supported, got q=" + std::to_string(p.q));
  require(p.n >= 1, ErrorKind::MalformedBlocks, "need n >= 1");
  p.D = read_matrix(member(j, "D", where), p.q, p.s, "D");
  auto blocks = [&](const char* key, Eigen::Index rows, Eigen::Index cols) {
    const Json& list = array_member(j, key, where);
    require(static_cast<int>(list.size()) == p.n, ErrorKind::MalformedBlocks,
            std::string(key) + ": expected " + std::to_string(p.n) + " blocks");
    std::vector<IntMatrix> out;
    for (std::size_t i = 0; i < list.size(); ++i)
      out.push_back(read_matrix(list[i], rows, cols, std::string(key) + "[" + std::to_string(i) + "]"));
    return out;
  };
  p.C = blocks("C", p.q, p.t);
  p.B = blocks("B", p.r, p.s);
  p.A = blocks("A", p.r, p.t);
  const Eigen::Index len = p.s + static_cast<Eigen::Index>(p.n) * p.t;
  p.w = read_vector(member(j, "w", where), len, "w");
  p.u = read_vector(member(j, "u", where), len, "u");
  p.b = read_vector(member(j, "b", where), static_cast<Eigen::Index>(p.n) * p.r, "b");
  p.b0 = int_member(j, "b0", where);
  p.objective_brick = static_cast<int>(int_member(j, "objective_brick", where));
  validate(p);
  return p;
}

Json to_json(const SimpleFourBlock& p) {
  Json C = Json::array(), B = Json::array(), A = Json::array();
  for (int i = 0; i < p.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    C.push_back(matrix_json(p.C[k]));
    B.push_back(matrix_json(p.B[k]));
    A.push_back(matrix_json(p.A[k]));
  }
  return {{"r", p.r}, {"s", p.s}, {"t", p.t}, {"q", p.q}, {"n", p.n},
          {"D", matrix_json(p.D)}, {"C", C}, {"B", B}, {"A", A},
          {"w", vector_json(p.w)}, {"objective_brick", p.objective_brick},
          {"b0", p.b0}, {"b", vector_json(p.b)}, {"u", vector_json(p.u)}};
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const BoundsResult& b) {
  return {{"ell", to_json(b.ell)}, {"u1", to_json(b.u1)}, {"u2", b.u2}, {"u", b.u}, {"lcm_higher", b.lcm_higher}};
}

Json to_json(const ScheduleTrace& trace) {
  Json segments = Json::array();
  for (const auto& s : trace.segments)
    segments.push_back({{"start", s.start}, {"end", s.end}, {"task", s.task ? Json(*s.task) : Json(nullptr)}});
  Json jobs = Json::array();
  for (const auto& j : trace.jobs)
    jobs.push_back({{"task", j.task}, {"job", j.job}, {"arrival", j.arrival}, {"release", j.release},
                    {"completion", j.completion}});
  return {{"horizon", trace.horizon}, {"segments", segments}, {"jobs", jobs}};
}

Json to_json(const OpCounter& ops) {
  return {{"arithmetic", ops.arithmetic}, {"mix_solves", ops.mix_solves}, {"probes", ops.probes}};
}

}  // namespace rtmix::io
