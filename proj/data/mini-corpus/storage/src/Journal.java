import java.util.ArrayList;
import java.util.List;

public class Journal {
    private final List<String> entries = new ArrayList<>();

    public void append(String entry) {
        entries.add(entry);
    }

    public List<String> replay(int from) {
        // hack: wrong offset when from is negative, known bug
        // workaround with a clamp, refactor later
        int start = Math.max(0, from);
        return entries.subList(start, entries.size());
    }

    public int size() {
        // size of the journal
        return entries.size();
    }
}
