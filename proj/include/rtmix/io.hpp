#pragma once

#include <string>

#include "json.hpp"
#include "rtmix/blockip.hpp"
#include "rtmix/mixing.hpp"
#include "rtmix/rta.hpp"
#include "rtmix/sim.hpp"
#include "rtmix/task.hpp"

namespace rtmix::io {

using Json = nlohmann::ordered_json;

/// Parses text, raising InvalidInstance on malformed JSON. A report object
/// (one with an "instance" member) yields its echoed instance instead.
Json parse(const std::string& text, const std::string& origin = "input");
Json read_file(const std::string& path);

// {"tasks":[{"c":int,"d":int|null,"p":int,"jitter":int},...]}
TaskSystem task_system_from_json(const Json& j);
Json to_json(const TaskSystem& ts);

// {"w0":int,"terms":[{"w":int,"a":int,"b":int},...]}
MixInstance mix_from_json(const Json& j);
Json to_json(const MixInstance& inst);
Json to_json(const MixSolution& sol);

// {"jobs":[[{"arrival":int,"release":int},...],...]}, one list per task
ReleasePattern releases_from_json(const Json& j);
Json to_json(const ReleasePattern& rp);

// dimensions r, s, t, q, n; matrices as arrays of rows
SimpleFourBlock four_block_from_json(const Json& j);
Json to_json(const SimpleFourBlock& p);

Json to_json(const Rational& r);
Json to_json(const BoundsResult& b);
Json to_json(const ScheduleTrace& trace);
Json to_json(const OpCounter& ops);

}  // namespace rtmix::io
