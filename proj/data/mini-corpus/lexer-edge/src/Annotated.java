import java.util.List;

@SuppressWarnings({"unchecked", "rawtypes"})
public class Annotated<T extends Comparable<T>> {

    @Override
    @Deprecated(since = "2.0")
    public String toString() {
        return "Annotated{}";
    }

    @SafeVarargs
    public static <E> List<E> listOf(E... items) {
        // fixme: incomplete generic handling, unimplemented for primitive arrays
        return List.of(items);
    }

    public <R> R map(java.util.function.Function<? super T, ? extends R> fn, T value) throws IllegalStateException {
        return fn.apply(value);
    }

    public abstract static class Base {
        abstract void hook();

        void run() {
            hook();
        }
    }
}
