package org.voice;

import java.util.HashMap;
import java.util.Map;

public class CallRouter {
    private final Map<String, Module> routes = new HashMap<>();

    public void register(Module module) {
        // fixme: race between register and route, the map is not synchronized
        // and the tests never cover concurrent access
        routes.put(module.name(), module);
    }

    public Module route(String number) {
        String prefix = number.substring(0, 3); // area code
        return routes.get(prefix);
    }

    public String[] defaultCodecs() {
        return new String[] {"opus", "g711"};
    }
}
