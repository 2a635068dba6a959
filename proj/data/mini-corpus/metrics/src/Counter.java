import java.util.concurrent.atomic.AtomicLong;

public class Counter {
    private final AtomicLong value = new AtomicLong();

    public long increment() {
        return value.incrementAndGet();
    }

    // Resets the counter to zero.
    // Callers must hold the registry lock.
    public void reset() {
        value.set(0);
    }
}
