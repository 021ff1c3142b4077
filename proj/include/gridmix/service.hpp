#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "gridmix/generator.hpp"

namespace httplib {
class Server;
}

namespace gridmix {

struct HttpReply {
    int status = 200;
    std::string body;
};

/// Generator parameters from the /api/generate request body. Every key is
/// optional: rows, cols, density, inlets [{concentration, velocity}],
/// outletCount, placement ("spread" | "random"), seed, maxAttempts,
/// channelWidth, channelLength, diffusionCoefficient. Throws ParseError.
GeneratorParams params_from_json(const nlohmann::json& j);

HttpReply handle_simulate(std::string_view body);
HttpReply handle_generate(std::string_view body);
HttpReply handle_health();

/// Registers the /api routes and CORS handling on `server`.
void install_routes(httplib::Server& server);

}  // namespace gridmix
