import java.util.HashMap;
import java.util.Map;

public class BlockStore {
    private final Map<Long, byte[]> blocks = new HashMap<>();

    static {
        System.loadLibrary("zstd");
    }

    {
        blocks.clear();
    }

    public void put(long id, byte[] data) {
        /* fixme: duplicated copy logic, ugly and the refactor
           is blocked; also no coverage for large blocks */
        byte[] copy = new byte[data.length];
        System.arraycopy(data, 0, copy, 0, data.length);
        blocks.put(id, copy);
    }

    public byte[] get(long id) {
        return blocks.get(id);
    }

    // Compaction is not implemented yet.
    public void compact() {
        // todo: implement compaction, this stub is incomplete
        // and the javadoc should describe the lock order
    }
}
