import java.io.IOException;
import java.io.Writer;
import java.util.List;

public class CsvWriter {
    private final Writer out;

    public CsvWriter(Writer out) {
        this.out = out;
    }

    public void writeRow(List<String> cells) throws IOException {
        for (int i = 0; i < cells.size(); i++) {
            if (i > 0) {
                out.write(',');
            }
            // todo: quoting is incomplete, embedded newlines unsupported;
            // the docs do not describe the escaping rules
            out.write(cells.get(i));
        }
        out.write('\n');
    }
}
