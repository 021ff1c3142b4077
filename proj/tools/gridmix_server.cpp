#include <cstdio>

#include <CLI11.hpp>
#include <httplib.h>

#include "gridmix/service.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gridmix HTTP service"};
    std::string host = "127.0.0.1";
    int port = 8080;
    app.add_option("--host", host, "bind address");
    app.add_option("--port", port, "port; 0 picks a free one");
    CLI11_PARSE(app, argc, argv);

    httplib::Server server;
    gridmix::install_routes(server);
    if (port == 0) {
        port = server.bind_to_any_port(host);
        if (port < 0) {
            std::fprintf(stderr, "cannot bind %s\n", host.c_str());
            return 1;
        }
        std::printf("listening on %s:%d\n", host.c_str(), port);
        std::fflush(stdout);
        return server.listen_after_bind() ? 0 : 1;
    }
    if (!server.bind_to_port(host, port)) {
        std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
        return 1;
    }
    std::printf("listening on %s:%d\n", host.c_str(), port);
    std::fflush(stdout);
    return server.listen_after_bind() ? 0 : 1;
}
