#include "glc3d/error.hpp"
#include "glc3d/service.hpp"

#include <httplib.h>

#include <charconv>
#include <iostream>

namespace glc3d {

int serve(Workbench& workbench, const std::string& bind) {
    const auto colon = bind.rfind(':');
    int port = 0;
    const char* port_begin = bind.data() + colon + 1;
    const char* port_end = bind.data() + bind.size();
    if (colon == std::string::npos || std::from_chars(port_begin, port_end, port).ptr != port_end || port <= 0 ||
        port > 65535) {
        throw ConfigurationError("bind address must be host:port, got '" + bind + "'");
    }
    const std::string host = bind.substr(0, colon);

    httplib::Server server;
    const auto dispatch = [&workbench](const httplib::Request& req, httplib::Response& res) {
        Request request{req.method, req.path, {}, req.body};
        for (const auto& [key, value] : req.params) {
            request.query.emplace(key, value);
        }
        const Response response = workbench.handle(request);
        res.status = response.status;
        for (const auto& [key, value] : response.headers) {
            res.set_header(key, value);
        }
        res.set_content(response.body, response.content_type);
    };
    server.Get(".*", dispatch);
    server.Post(".*", dispatch);
    server.Put(".*", dispatch);
    server.Delete(".*", dispatch);

    std::cerr << "glc3d: listening on " << host << ':' << port << '\n';
    if (!server.listen(host, port)) {
        throw IoError("cannot listen on '" + bind + "'");
    }
    return 0;
}

}  // namespace glc3d
