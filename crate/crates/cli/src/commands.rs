use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use teanet::analytics::{
    emotion_zscores, join_norms, kendall_tau_shared, node_metrics, normalized_edge_weights, prominence,
    rank_sum_test, relative_degree, NormMode, Z_CRITICAL,
};
use teanet::benchmark::{
    evaluate_passive, evaluate_roles, load_gold, parse_gold, passive_table, predict, role_table, BenchmarkReport,
    Extractor,
};
use teanet::extract::{extract_baseline_sentence, extract_sentence, number_records};
use teanet::graph::{
    build_graph_with, export_graph, export_hypergraph, filter_records, EventKey, ExportFormat, GraphOptions, NodeKey,
    RecordFilter,
};
use teanet::lexicon::{EmotionLexicon, ScalarNorms, SynonymTable, ValenceLexicon};
use teanet::record::{merge_svo_tables, read_svo_csv, svo_csv_string};
use teanet::{parse_conllu_str, Corpus, DeprelSchema, Error, Relation, Result, Role, SvoRecord, NONE};

use crate::{
    Cli, Command, CompareArgs, EmotionArgs, ExtractArgs, FilterArgs, GraphArgs, MergeArgs, MetricsArgs, Output,
    ValidateArgs,
};

pub fn run(cli: &Cli) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(cli.jobs))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Extract(a) => extract(cli, a),
        Command::Graph(a) => graph(a),
        Command::Metrics(a) => metrics(a),
        Command::Compare(a) => compare(a),
        Command::Emotions(a) => emotions(cli, a),
        Command::Validate(a) => validate(cli, a),
        Command::Merge(a) => merge(a),
    })
}

fn require_input(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::Usage(format!("input file `{}` does not exist", path.display())))
    }
}

fn require_output(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(Error::Usage(format!(
            "output directory `{}` does not exist",
            dir.display()
        ))),
        _ => Ok(()),
    }
}

fn out_path(out: &Output) -> Option<&Path> {
    out.out.as_deref().filter(|p| *p != Path::new("-"))
}

fn check_paths<'a>(inputs: impl IntoIterator<Item = &'a PathBuf>, outputs: &[Option<&Path>]) -> Result<()> {
    for p in inputs {
        require_input(p)?;
    }
    outputs.iter().flatten().try_for_each(|p| require_output(p))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match out_path(out) {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn schema(name: &str) -> Result<DeprelSchema> {
    match name.to_ascii_lowercase().as_str() {
        "clear" | "ud" => DeprelSchema::by_name(name),
        _ if Path::new(name).is_file() => DeprelSchema::from_tsv(Path::new(name)),
        _ => DeprelSchema::by_name(name),
    }
}

fn event_key(s: &str) -> Result<EventKey> {
    match s {
        "head" | "lemma" => Ok(EventKey::HeadLemma),
        "phrase" => Ok(EventKey::Phrase),
        other => Err(Error::Usage(format!("unknown event key `{other}` (expected `head` or `phrase`)"))),
    }
}

fn node(text: &str) -> Result<NodeKey> {
    let (role, label) = text
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("node `{text}` must look like role:label")))?;
    if label.is_empty() {
        return Err(Error::Usage(format!("node `{text}` has an empty label")));
    }
    Ok(NodeKey::new(label, Role::parse(role)?))
}

fn read_table(path: &Path) -> Result<Vec<SvoRecord>> {
    read_svo_csv(std::fs::File::open(path)?)
}

fn record_filter(f: &FilterArgs) -> Result<RecordFilter> {
    Ok(RecordFilter {
        agent: f.agent.clone(),
        event: f.event.clone(),
        target: f.target.clone(),
        voice: f.voice.parse()?,
        exclude_approx: f.exclude_approx,
    })
}

/// Reads every file and applies the schema; each file's stem is its default document id.
fn read_corpus(paths: &[PathBuf], schema: &DeprelSchema) -> Result<Corpus> {
    let mut corpus = Corpus::default();
    for path in paths {
        let text = std::fs::read_to_string(path)?;
        let doc = path.file_stem().map_or_else(|| "doc".into(), |s| s.to_string_lossy().into_owned());
        let parsed = parse_conllu_str(&text, &doc).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Data(format!("{}:{line}: {msg}", path.display())),
            other => other,
        })?;
        corpus.documents.extend(schema.apply(parsed).documents);
    }
    Ok(corpus)
}

/// One corpus per document, so documents can be processed independently.
fn split_documents(corpus: &Corpus) -> Vec<Corpus> {
    corpus
        .documents
        .iter()
        .map(|d| Corpus { documents: vec![d.clone()] })
        .collect()
}

fn extract(cli: &Cli, a: &ExtractArgs) -> Result<()> {
    check_paths(&a.input, &[out_path(&a.output), a.hypergraph.as_deref()])?;
    let extractor: Extractor = a.extractor.parse()?;
    let corpus = read_corpus(&a.input, &schema(&cli.schema)?)?;
    let per_doc: Vec<Vec<SvoRecord>> = corpus
        .documents
        .par_iter()
        .map(|(_, sentences)| match extractor {
            Extractor::Tea => sentences.iter().flat_map(extract_sentence).collect(),
            Extractor::Baseline => sentences.iter().map(extract_baseline_sentence).collect(),
        })
        .collect();
    let mut records: Vec<SvoRecord> = per_doc.into_iter().flatten().collect();
    number_records(&mut records, 0);
    if let Some(path) = &a.hypergraph {
        std::fs::write(path, export_hypergraph(&records, EventKey::HeadLemma))?;
    }
    emit(&a.output, &svo_csv_string(&records))
}

fn graph(a: &GraphArgs) -> Result<()> {
    let lexicons = [&a.valence, &a.synonyms];
    check_paths(
        std::iter::once(&a.input).chain(lexicons.into_iter().flatten()),
        &[out_path(&a.output)],
    )?;
    let filter = record_filter(&a.filter)?;
    let key = event_key(&a.filter.event_key)?;
    let records = filter_records(&read_table(&a.input)?, &filter);
    let text = if a.format.eq_ignore_ascii_case("hypergraph") {
        export_hypergraph(&records, key)
    } else {
        let format: ExportFormat = a.format.parse()?;
        let valence = match &a.valence {
            Some(p) => ValenceLexicon::load(p)?,
            None => ValenceLexicon::vader(),
        };
        let synonyms = match (&a.synonyms, a.no_synonyms) {
            (_, true) => None,
            (Some(p), false) => Some(SynonymTable::load(p)?),
            (None, false) => Some(SynonymTable::sample()),
        };
        let g = build_graph_with(&records, &valence, synonyms.as_ref(), GraphOptions { event_key: key });
        export_graph(&g, format)
    };
    emit(&a.output, &text)
}

fn metrics(a: &MetricsArgs) -> Result<()> {
    check_paths([&a.input], &[out_path(&a.output)])?;
    let filter = record_filter(&a.filter)?;
    let key = event_key(&a.filter.event_key)?;
    let roles = match &a.role {
        Some(r) => vec![Role::parse(r)?],
        None => vec![Role::Agent, Role::Event, Role::Target],
    };
    let records = filter_records(&read_table(&a.input)?, &filter);
    let mut out = String::new();
    if a.edges {
        for (i, relation) in [Relation::AgentEvent, Relation::EventTarget].into_iter().enumerate() {
            let tsv = normalized_edge_weights(&records, relation, &a.subcorpus, key).to_tsv();
            // one header for both relations
            out.push_str(if i == 0 { &tsv } else { tsv.split_once('\n').map_or("", |(_, body)| body) });
        }
    } else {
        for (i, role) in roles.into_iter().enumerate() {
            let tsv = relative_degree(node_metrics(&records, role, key)).to_tsv();
            out.push_str(if i == 0 { &tsv } else { tsv.split_once('\n').map_or("", |(_, body)| body) });
        }
    }
    emit(&a.output, &out)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), |v| v.to_string())
}

fn role_labels(records: &[SvoRecord], role: Role, key: EventKey) -> Vec<String> {
    let labels: BTreeSet<&str> = records
        .iter()
        .map(|r| if role == Role::Event { key.label(r) } else { r.slot(role) })
        .filter(|l| *l != NONE)
        .collect();
    labels.into_iter().map(String::from).collect()
}

fn compare(a: &CompareArgs) -> Result<()> {
    check_paths([&a.a, &a.b].into_iter().chain(&a.norms), &[out_path(&a.output)])?;
    let anchor = node(&a.anchor)?;
    let key = event_key(&a.event_key)?;
    let norm_setup = match &a.norms {
        Some(p) => Some((
            ScalarNorms::load(p, "norm")?,
            Role::parse(&a.norm_role)?,
            a.norm_mode.parse::<NormMode>()?,
        )),
        None => None,
    };
    let ta = read_table(&a.a)?;
    let tb = read_table(&a.b)?;
    let shared = kendall_tau_shared(&ta, &tb, &anchor, key);

    let mut out = String::new();
    let _ = writeln!(out, "anchor\t{}:{}", anchor.role, anchor.label);
    let _ = writeln!(out, "relation\t{}", shared.relation.as_str());
    let _ = writeln!(out, "tau\t{}", fmt_opt(shared.result.tau));
    let _ = writeln!(out, "p\t{}", fmt_opt(shared.result.p));
    let _ = writeln!(out, "n_shared\t{}", shared.result.n);

    let (src_role, _) = shared.relation.roles();
    let touches = |source: &str, target: &str| {
        if anchor.role == src_role {
            source == anchor.label
        } else {
            target == anchor.label
        }
    };
    let nw_a = normalized_edge_weights(&ta, shared.relation, "a", key);
    let nw_b = normalized_edge_weights(&tb, shared.relation, "b", key);
    out.push_str("\nsource\ttarget\trelation\tnw_a\tnw_b\tprominence\n");
    for p in prominence(&nw_a, &nw_b).into_iter().filter(|p| touches(&p.source, &p.target)) {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            p.source,
            p.target,
            p.relation.as_str(),
            p.nw_a,
            p.nw_b,
            p.p
        );
    }

    if let Some((norms, role, mode)) = norm_setup {
        let ja = join_norms(&role_labels(&ta, role, key), &norms, mode);
        let jb = join_norms(&role_labels(&tb, role, key), &norms, mode);
        out.push('\n');
        let _ = writeln!(out, "norm_role\t{role}");
        let _ = writeln!(out, "omitted_a\t{}", ja.omitted);
        let _ = writeln!(out, "omitted_b\t{}", jb.omitted);
        let r = rank_sum_test(&ja.values(), &jb.values())?;
        let _ = writeln!(out, "n_a\t{}", r.n_a);
        let _ = writeln!(out, "n_b\t{}", r.n_b);
        let _ = writeln!(out, "U\t{}", r.u);
        let _ = writeln!(out, "p_ranksum\t{}", r.p);
        let _ = writeln!(out, "method\t{:?}", r.method);
    }
    emit(&a.output, &out)
}

fn emotions(cli: &Cli, a: &EmotionArgs) -> Result<()> {
    check_paths(std::iter::once(&a.input).chain(&a.lexicon), &[out_path(&a.output)])?;
    let key = event_key(&a.event_key)?;
    let roles = if a.role.is_empty() {
        vec![Role::Agent, Role::Event, Role::Target]
    } else {
        a.role.iter().map(|r| Role::parse(r)).collect::<Result<_>>()?
    };
    let anchor = a.anchor.as_deref().map(node).transpose()?;
    let lex = match &a.lexicon {
        Some(p) => EmotionLexicon::load(p)?,
        None => EmotionLexicon::sample(),
    };
    let records = read_table(&a.input)?;
    let mut words = Vec::new();
    for r in &records {
        let slot = |role: Role| if role == Role::Event { key.label(r) } else { r.slot(role) };
        if anchor.as_ref().is_some_and(|n| slot(n.role) != n.label) {
            continue;
        }
        for &role in &roles {
            let label = slot(role);
            if label != NONE {
                words.extend(label.split_whitespace());
            }
        }
    }
    let profile = emotion_zscores(&words, &lex, a.samples, cli.seed)?;
    let mut out = String::new();
    let _ = writeln!(out, "# words={} samples={} seed={}", profile.words, profile.samples, profile.seed);
    let _ = writeln!(out, "emotion\tobserved\tmu\tsigma\tz\tsignificant@{Z_CRITICAL}");
    for s in &profile.scores {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            s.emotion.as_str(),
            s.observed,
            s.mu,
            s.sigma,
            fmt_opt(s.z),
            u8::from(s.significant)
        );
    }
    emit(&a.output, &out)
}

/// Same result as `run_benchmark`, with prediction spread over documents.
fn benchmark(corpus: &Corpus, gold: &[teanet::benchmark::GoldTriple], extractor: Extractor) -> Result<BenchmarkReport> {
    let parts: Vec<_> = split_documents(corpus)
        .par_iter()
        .map(|doc| predict(doc, extractor))
        .collect();
    let mut records = Vec::new();
    let mut flags = BTreeMap::new();
    for (r, f) in parts {
        records.extend(r);
        flags.extend(f);
    }
    number_records(&mut records, 0);
    let gold_flags: BTreeMap<String, bool> = gold.iter().map(|g| (g.sent_id.clone(), g.is_passive)).collect();
    Ok(BenchmarkReport {
        extractor,
        sentences: gold.len(),
        roles: evaluate_roles(&records, gold),
        passive: evaluate_passive(&flags, &gold_flags)?,
    })
}

fn validate(cli: &Cli, a: &ValidateArgs) -> Result<()> {
    check_paths(a.conllu.iter().chain(&a.gold), &[out_path(&a.output)])?;
    let extractors = match a.extractor.as_str() {
        "both" => vec![Extractor::Tea, Extractor::Baseline],
        other => vec![other.parse()?],
    };
    let schema = schema(&cli.schema)?;
    let (corpus, gold) = match (&a.conllu, &a.gold) {
        (Some(c), Some(g)) => (read_corpus(std::slice::from_ref(c), &schema)?, load_gold(g)?),
        _ => (
            schema.apply(parse_conllu_str(teanet::BENCH_CONLLU, "bench")?),
            parse_gold(teanet::BENCH_GOLD, "gold.tsv")?,
        ),
    };
    let reports = extractors
        .into_iter()
        .map(|e| benchmark(&corpus, &gold, e))
        .collect::<Result<Vec<_>>>()?;
    let text = if a.json {
        let mut s = serde_json::to_string_pretty(&reports)?;
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "Role extraction ({} sentences)", gold.len());
        s.push_str(&role_table(&reports.iter().collect::<Vec<_>>()));
        for r in &reports {
            let _ = writeln!(s, "\nPassive classification: {}", r.extractor.display_name());
            s.push_str(&passive_table(&r.passive));
        }
        s
    };
    emit(&a.output, &text)
}

fn merge(a: &MergeArgs) -> Result<()> {
    check_paths(&a.input, &[out_path(&a.output)])?;
    let tables = a.input.iter().map(|p| read_table(p)).collect::<Result<Vec<_>>>()?;
    emit(&a.output, &svo_csv_string(&merge_svo_tables(tables)))
}
