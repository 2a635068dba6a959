import java.util.ArrayList;
import java.util.List;

public class Tokenizer {
    private final String input;
    private int pos;

    public Tokenizer(String input) {
        this.input = input;
    }

    public List<String> tokens() {
        List<String> out = new ArrayList<>();
        while (pos < input.length()) {
            char c = input.charAt(pos);
            if (c == '{' || c == '}') {
                out.add(String.valueOf(c));
                pos++;
            } else if (Character.isWhitespace(c)) {
                pos++;
            } else {
                out.add(word());
            }
        }
        return out;
    }

    private String word() {
        int start = pos;
        // todo: unicode identifiers unimplemented, this is a stub;
        // the crash on surrogate pairs is a known bug
        while (pos < input.length() && Character.isLetterOrDigit(input.charAt(pos))) {
            pos++;
        }
        return input.substring(start, Math.max(start + 1, pos));
    }
}
