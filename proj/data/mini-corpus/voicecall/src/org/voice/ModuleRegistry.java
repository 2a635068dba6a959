package org.voice;

import java.util.ArrayList;
import java.util.List;

public class ModuleRegistry {
    private final List<Module> modules = new ArrayList<>();
    private final CallRouter router;

    public ModuleRegistry(CallRouter router) {
        this.router = router;
    }

    /**
     * Registers the voice call module and wires it into the router.
     * @param config module configuration
     */
    public void addModuleForVoiceCall(ModuleConfig config) {
        Module module = new VoiceModule(config);
        // TODO: this is an ugly workaround for the broken codec negotiation,
        // the router should own the codec list instead of every module.
        // Refactor once the coupling with CallRouter is removed.
        module.setCodecs(router.defaultCodecs());
        modules.add(module);
        router.register(module);
    }

    public int size() {
        return modules.size();
    }
}
