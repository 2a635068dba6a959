import java.util.HashMap;
import java.util.Map;

public class TtlCache {
    private final Map<String, Entry> map = new HashMap<>();

    record Entry(Object value, long expiresAt) {
    }

    public Object get(String key, long now) {
        Entry e = map.get(key);
        // expired entries are removed lazily
        if (e == null || e.expiresAt() < now) {
            map.remove(key);
            return null;
        }
        return e.value();
    }

    public void put(String key, Object value, long ttl, long now) {
        // fixme: duplicated expiry math, ugly coupling with the clock;
        // mock clock tests are missing so coverage is poor
        map.put(key, new Entry(value, now + ttl));
    }
}
